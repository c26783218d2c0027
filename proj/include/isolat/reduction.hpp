#pragma once

// Basis reduction, exact shortest vectors and the spectral test.

#include <cstdint>
#include <span>
#include <vector>

#include "isolat/lattice.hpp"
#include "isolat/linalg.hpp"

namespace isolat {

inline constexpr double kDefaultLllDelta = 0.75;
inline constexpr std::size_t kMaxEnumerationDim = 12;

/// LLL-reduced basis with the exact unimodular transform that produced it:
/// exact_rows = transform · input.
struct ReducedBasis {
  std::size_t dim = 0;
  std::vector<std::vector<double>> rows;
  RationalMatrix exact_rows;
  IntMatrix transform;
  double delta = kDefaultLllDelta;
};

struct IntegerReduction {
  IntMatrix basis;
  IntMatrix transform;
};

/// LLL on an integer basis. Gram–Schmidt data is floating, basis updates are
/// exact and overflow-checked.
IntegerReduction lll_reduce_integer(const IntMatrix& basis, double delta = kDefaultLllDelta);

ReducedBasis lll_reduce(const RationalMatrix& basis, double delta = kDefaultLllDelta);

/// Size-reduction and Lovász conditions, with absolute/relative slack `tol`.
bool satisfies_lll(const std::vector<std::vector<double>>& rows, double delta, double tol = 1e-9);

struct LatticeVector {
  IntVector coefficients;  // relative to the input basis
  RationalVector vector;
  Rational norm_sq;
  double norm = 0.0;
};

/// Exact shortest nonzero vector (Fincke–Pohst enumeration on an LLL basis).
/// Among equally short vectors the one whose coefficient vector, normalised
/// to have a positive first nonzero entry, is lexicographically smallest wins.
LatticeVector shortest_vector(const IntMatrix& basis);
LatticeVector shortest_vector(const RationalMatrix& basis);

/// The `count` shortest nonzero vectors up to sign, ordered by norm and then
/// by the tie-break used in shortest_vector.
std::vector<LatticeVector> short_vectors(const IntMatrix& basis, std::size_t count);

/// Every nonzero vector (up to sign) with squared norm <= bound, ordered as
/// in short_vectors.
std::vector<LatticeVector> vectors_within(const IntMatrix& basis, const Rational& norm_sq_bound);

struct SpectralReport {
  double sigma = 0.0;
  IntVector shortest_dual;
  std::int64_t dual_norm_sq = 0;
  double dual_norm = 0.0;
  double diam_cell = 0.0;
  double lll_delta = kDefaultLllDelta;
  /// d·2^{d-1}·sigma, the bound diam_cell must respect.
  double diam_bound = 0.0;
};

SpectralReport spectral_test(const IntegrationLattice& lat, double delta = kDefaultLllDelta);

/// Diameter of the parallelotope spanned by the rows: max over sign patterns
/// of |Σ ε_i b_i|, evaluated exactly on the rational rows.
double cell_diameter(const ReducedBasis& rb);

/// Hyperplanes {x : h·x = k}, k ∈ Z, for a dual vector h.
struct HyperplaneFamily {
  IntVector normal;
  double spacing = 0.0;
  std::int64_t k_min = 0;  // smallest k whose hyperplane meets [0,1]^d
  std::int64_t k_max = 0;
  std::size_t count() const { return static_cast<std::size_t>(k_max - k_min + 1); }
};

/// Throws std::invalid_argument unless h is a nonzero vector of L^⊥.
HyperplaneFamily hyperplane_family(const IntegrationLattice& lat, std::span<const std::int64_t> h);

/// Exact check that h·p ∈ Z for every point.
bool points_on_hyperplanes(const LatticePointSet& points, std::span<const std::int64_t> h);

}  // namespace isolat
