#pragma once

// Independent reference computations used by the tests. None of these call
// into the library's algorithms; they brute-force or use closed forms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "isolat/lattice.hpp"

namespace oracle {

using isolat::Integer;
using isolat::Rational;

/// Integer matrix D·B and D for a rational basis B.
struct ScaledBasis {
  std::int64_t den = 1;
  std::vector<std::vector<std::int64_t>> rows;
};

inline ScaledBasis scale(const isolat::IntegrationLattice& lat) {
  Integer den = 1;
  for (const auto& row : lat.basis) {
    for (const auto& v : row) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v));
  }
  ScaledBasis s;
  s.den = static_cast<std::int64_t>(den);
  for (const auto& row : lat.basis) {
    std::vector<std::int64_t> r;
    for (const auto& v : row) r.push_back(static_cast<std::int64_t>(boost::multiprecision::numerator(Rational(v * den))));
    s.rows.push_back(r);
  }
  return s;
}

/// h ∈ L^⊥ iff h·(D b) ≡ 0 (mod D) for every row b.
inline bool dual_member(const ScaledBasis& s, const std::vector<std::int64_t>& h) {
  for (const auto& r : s.rows) {
    __extension__ __int128 acc = 0;
    for (std::size_t k = 0; k < h.size(); ++k) acc += static_cast<__int128>(h[k]) * r[k];
    if (acc % s.den != 0) return false;
  }
  return true;
}

/// Minimal squared norm of a nonzero dual vector with ‖h‖∞ <= window.
/// Returns 0 when none is found.
inline std::int64_t min_dual_norm_sq(const isolat::IntegrationLattice& lat, std::int64_t window) {
  const ScaledBasis s = scale(lat);
  const std::size_t d = lat.dim;
  std::vector<std::int64_t> h(d, -window);
  std::int64_t best = 0;
  while (true) {
    std::int64_t n2 = 0;
    for (const auto v : h) n2 += v * v;
    if (n2 > 0 && (best == 0 || n2 < best) && dual_member(s, h)) best = n2;
    std::size_t k = 0;
    while (k < d && h[k] == window) h[k++] = -window;
    if (k == d) break;
    ++h[k];
  }
  return best;
}

/// Points k·g/n mod 1 as sorted rational tuples.
inline std::vector<std::vector<Rational>> rank1_points(std::int64_t n, const std::vector<std::int64_t>& g) {
  std::vector<std::vector<Rational>> pts;
  for (std::int64_t k = 0; k < n; ++k) {
    std::vector<Rational> p;
    for (const auto gi : g) p.emplace_back(((k * gi) % n + n) % n, n);
    pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline double unit_ball_volume(std::size_t j) {
  const double h = static_cast<double>(j) / 2.0;
  return std::pow(M_PI, h) / std::tgamma(1.0 + h);
}

/// Σ_{j=1}^d binom(d,j) κ_j ρ^j via lgamma, in long double.
inline long double cube_shell(std::size_t d, long double rho) {
  long double s = 0;
  for (std::size_t j = 1; j <= d; ++j) {
    const long double lb = std::lgamma(d + 1.0L) - std::lgamma(j + 1.0L) - std::lgamma(d - j + 1.0L);
    const long double lk = (j / 2.0L) * std::log(static_cast<long double>(M_PI)) - std::lgamma(1.0L + j / 2.0L);
    s += std::exp(lb + lk + j * std::log(rho));
  }
  return s;
}

inline double point_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

/// Brute-force nearest distance from x to a flat list of points.
inline double brute_nearest(const std::vector<double>& flat, std::size_t d, const std::vector<double>& x) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < flat.size(); i += d) {
    double s = 0;
    for (std::size_t k = 0; k < d; ++k) s += (flat[i + k] - x[k]) * (flat[i + k] - x[k]);
    best = std::min(best, s);
  }
  return std::sqrt(best);
}

}  // namespace oracle
