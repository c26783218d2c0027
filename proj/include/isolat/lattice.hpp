#pragma once

// Integration lattices L ⊇ Z^d, their point sets L ∩ [0,1)^d and dual lattices.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "isolat/linalg.hpp"

namespace isolat {

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;

/// A lattice containing Z^d, given by a rational basis (rows generate L).
/// Bases produced by the factory functions are in Hermite normal form, so two
/// lattices are equal iff their bases compare equal.
struct IntegrationLattice {
  std::size_t dim = 0;
  RationalMatrix basis;
  std::int64_t n_points = 0;
  std::string label;

  friend bool operator==(const IntegrationLattice& a, const IntegrationLattice& b) {
    return a.dim == b.dim && a.n_points == b.n_points && a.basis == b.basis;
  }
};

/// Lattice generated by the rows of `basis`; N is derived from the
/// determinant. Throws std::invalid_argument if the rows do not describe an
/// integration lattice.
IntegrationLattice make_lattice(const RationalMatrix& basis, std::string label = {});

/// Lattice generated by Z^d and g/n.
IntegrationLattice rank1_lattice(std::int64_t n, std::span<const std::int64_t> g);

std::int64_t fibonacci_number(int k);

/// Fibonacci lattice F_k: rank1(F_k, (1, F_{k-1})) with F_1 = F_2 = 1.
IntegrationLattice fibonacci_lattice(int k);

/// Korobov lattice rank1(n, (1, a, a^2, ..., a^{d-1}) mod n).
IntegrationLattice korobov_lattice(std::int64_t n, std::int64_t a, std::size_t dim);

/// (1/n) Z^d.
IntegrationLattice scaled_integer_lattice(std::int64_t n, std::size_t dim);

IntegrationLattice integer_lattice(std::size_t dim);

/// Human readable descriptions of every violated invariant; empty iff valid.
std::vector<std::string> validate(const IntegrationLattice& lat);

/// The N points of L ∩ [0,1)^d. Every coordinate is an exact multiple of
/// 1/denominator, stored as its integer numerator in [0, denominator).
struct LatticePointSet {
  std::size_t dim = 0;
  std::int64_t denominator = 1;
  std::vector<std::int64_t> numerators;  // row-major, size() * dim entries
  IntegrationLattice source;

  std::size_t size() const { return dim == 0 ? 0 : numerators.size() / dim; }
  std::span<const std::int64_t> point(std::size_t i) const {
    return {numerators.data() + i * dim, dim};
  }
  Rational coordinate(std::size_t i, std::size_t k) const {
    return Rational(numerators[i * dim + k], denominator);
  }
  std::vector<double> to_double() const;
};

/// Points sorted lexicographically. Throws std::length_error above `cap`.
LatticePointSet enumerate_points(const IntegrationLattice& lat,
                                 std::int64_t cap = kDefaultEnumerationCap);

/// Integer basis of L^⊥ = {h ∈ Z^d : h·x ∈ Z for all x ∈ L}, in Hermite
/// normal form.
struct DualBasis {
  std::size_t dim = 0;
  IntMatrix basis;
};

DualBasis dual_basis(const IntegrationLattice& lat);

/// Exact test h·b ∈ Z for every basis row b.
bool in_dual(const IntegrationLattice& lat, std::span<const std::int64_t> h);

/// Exact group-closure test over all pairs (sum mod 1 stays in the set).
bool is_closed_under_addition(const LatticePointSet& points);

}  // namespace isolat
