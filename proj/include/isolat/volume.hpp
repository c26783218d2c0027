#pragma once

// Unit-ball volumes, Steiner polynomials, parallel-body volumes and the
// binomial sum of ball volumes with its sub-exponential bounds.

#include <cstdint>
#include <vector>

#include "isolat/convex.hpp"
#include "isolat/linalg.hpp"

namespace isolat {

/// Volume of the j-dimensional unit ball, π^{j/2}/Γ(1+j/2).
double kappa(std::size_t j);
/// log κ_j for real j >= 0 (accurate far beyond the range of kappa()).
double log_kappa(double j);

/// V_j([0,1]^d) = binom(d, j).
Integer cube_intrinsic_volume(std::size_t d, std::size_t j);
/// W_j([0,1]^d) = κ_j, from binom(d,j)·W_j = κ_j·V_{d-j}.
double cube_quermassintegral(std::size_t d, std::size_t j);

/// W_0..W_d of an axis box: W_j = κ_j·e_{d-j}(sides)/binom(d,j), where e_k
/// is the k-th elementary symmetric polynomial of the side lengths.
std::vector<double> box_quermassintegrals(const AxisBox& box);

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  bool exact = false;
};

enum class OffsetSide { outer, inner };

struct OffsetSpec {
  double rho = 0.0;
  OffsetSide side = OffsetSide::outer;
};

inline constexpr std::uint64_t kDefaultSamples = 1'000'000;
inline constexpr std::uint64_t kMinSamples = 10'000;
inline constexpr std::uint64_t kSampleChunk = 65'536;

struct SamplerConfig {
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool force_mc = false;  // skip closed forms (used to cross-check them)
};

/// True when Vol(K + ρB) has a closed form here: balls, boxes, planar
/// polytopes, intervals and single points.
bool has_exact_steiner(const ConvexBody& k);

/// Vol(K + ρB). Closed-form Steiner polynomial where available, otherwise a
/// Monte Carlo estimate of Vol(K) + Vol(K_ρ^+) with exact = false.
VolumeEstimate steiner_volume(const ConvexBody& k, double rho, const SamplerConfig& cfg = {});

/// Vol(K_ρ^+) (outer shell) or Vol(K_ρ^-) (inner shell).
VolumeEstimate offset_volume(const ConvexBody& k, const OffsetSpec& spec, const SamplerConfig& cfg = {});

/// Vol({x : dist(x, ∂K) <= ρ}) = Vol(K_ρ^+) + Vol(K_ρ^-).
VolumeEstimate boundary_neighborhood_volume(const ConvexBody& k, double rho, const SamplerConfig& cfg = {});

/// v(ρ) = Vol(K_ρ) for balls and boxes; negative ρ gives the inner
/// parallel body K ÷ |ρ|B (empty below -r(K)).
double parallel_volume(const ConvexBody& k, double rho);

/// d·W_1(K_ρ), the surface area of K_ρ, for balls and boxes.
double parallel_surface_area(const ConvexBody& k, double rho);

struct DerivativeCheck {
  double finite_difference = 0.0;
  double analytic = 0.0;
};

/// Central difference (v(ρ+h) − v(ρ−h))/(2h) against d·W_1(K_ρ).
DerivativeCheck parallel_volume_derivative_check(const ConvexBody& k, double rho, double h);

/// log Σ_{j=1}^d binom(d,j) κ_j.
double log_binom_kappa_sum(std::size_t d);
/// log of d^{δ d^{2/3-δ}} / (√(2π) e d); δ ∈ (0, 2/3).
double log_remark_lower(std::size_t d, double delta);
/// log of (d √(2e³π))^{κ d^{2/3}} with implied constant 1; κ > e(2π)^{1/3}.
double log_remark_upper(std::size_t d, double kappa_exp);

}  // namespace isolat
