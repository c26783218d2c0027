#include "isolat/volume.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "isolat/parallel.hpp"

namespace isolat {

namespace {

std::vector<double> sides(const AxisBox& b) {
  std::vector<double> s(b.lower.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = b.upper[i] - b.lower[i];
  return s;
}

// e_0..e_d of the given values.
std::vector<double> elementary_symmetric(const std::vector<double>& a) {
  std::vector<double> e(a.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = i + 1; k > 0; --k) e[k] += a[i] * e[k - 1];
  }
  return e;
}

double box_steiner(const AxisBox& box, double rho) {
  const auto e = elementary_symmetric(sides(box));
  const std::size_t d = box.lower.size();
  double v = 0.0;
  for (std::size_t j = 0; j <= d; ++j) v += kappa(j) * e[d - j] * std::pow(rho, static_cast<double>(j));
  return v;
}

double box_volume(const AxisBox& box, double shrink) {
  double v = 1.0;
  for (std::size_t i = 0; i < box.lower.size(); ++i) {
    v *= std::max(box.upper[i] - box.lower[i] - 2.0 * shrink, 0.0);
  }
  return v;
}

bool single_point(const ConvexBody& k) {
  const auto* vp = std::get_if<VPolytope>(&k.shape());
  if (!vp) return false;
  return std::all_of(vp->vertices.begin(), vp->vertices.end(),
                     [&](const Point& v) { return v == vp->vertices.front(); });
}

VolumeEstimate exact(double v) { return {v, 0.0, 0, 0, true}; }

double log_binom(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

VolumeEstimate monte_carlo(const ConvexBody& k, const OffsetSpec& spec, const SamplerConfig& cfg) {
  if (cfg.samples < kMinSamples) throw std::invalid_argument("sample budget must be at least 10^4");
  const std::size_t d = k.dim();
  AxisBox region = k.bounding_box();
  if (spec.side == OffsetSide::outer) {
    for (std::size_t i = 0; i < d; ++i) {
      region.lower[i] -= spec.rho;
      region.upper[i] += spec.rho;
    }
  }
  double region_volume = 1.0;
  for (std::size_t i = 0; i < d; ++i) region_volume *= region.upper[i] - region.lower[i];

  const std::uint64_t n = cfg.samples;
  const std::size_t chunks = static_cast<std::size_t>((n + kSampleChunk - 1) / kSampleChunk);
  std::vector<std::uint64_t> hits(chunks, 0);
  std::vector<std::uint64_t> failures(chunks, 0);
  parallel_for(chunks, cfg.workers, [&](std::size_t c) {
    RandomStream rng(cfg.seed, c);
    const std::uint64_t begin = c * kSampleChunk;
    const std::uint64_t end = std::min<std::uint64_t>(n, begin + kSampleChunk);
    Point x(d);
    for (std::uint64_t s = begin; s < end; ++s) {
      for (std::size_t i = 0; i < d; ++i) x[i] = rng.uniform(region.lower[i], region.upper[i]);
      const bool inside = k.contains(x);
      if (spec.side == OffsetSide::outer) {
        if (inside) continue;
        const auto near = k.within_distance(x, spec.rho);
        if (!near) {
          ++failures[c];
        } else if (*near) {
          ++hits[c];
        }
      } else if (inside && k.dist_to_complement(x) <= spec.rho) {
        ++hits[c];
      }
    }
  });
  std::uint64_t hit = 0;
  std::uint64_t failed = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    hit += hits[c];
    failed += failures[c];
  }
  if (static_cast<double>(failed) > 1e-4 * static_cast<double>(n)) {
    throw ProjectionError("projection failures exceed 0.01% of samples");
  }
  const double p = static_cast<double>(hit) / static_cast<double>(n);
  VolumeEstimate est;
  est.value = region_volume * p;
  est.std_error = region_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  est.n_samples = n;
  est.seed = cfg.seed;
  est.exact = false;
  return est;
}

}  // namespace

double kappa(std::size_t j) {
  if (j > 100) return std::exp(log_kappa(static_cast<double>(j)));
  double even = 1.0;                 // κ_0
  double odd = 2.0;                  // κ_1
  for (std::size_t i = 2; i <= j; ++i) {
    double& k = i % 2 == 0 ? even : odd;
    k *= 2.0 * std::numbers::pi / static_cast<double>(i);
  }
  return j % 2 == 0 ? even : odd;
}

double log_kappa(double j) {
  if (j < 0) throw std::invalid_argument("kappa needs j >= 0");
  return 0.5 * j * std::log(std::numbers::pi) - std::lgamma(1.0 + 0.5 * j);
}

Integer cube_intrinsic_volume(std::size_t d, std::size_t j) {
  if (j > d) throw std::invalid_argument("intrinsic volume index out of range");
  Integer b = 1;
  for (std::size_t i = 1; i <= j; ++i) b = b * (d - j + i) / i;
  return b;
}

double cube_quermassintegral(std::size_t d, std::size_t j) {
  if (j > d) throw std::invalid_argument("quermassintegral index out of range");
  const Rational ratio(cube_intrinsic_volume(d, d - j), cube_intrinsic_volume(d, j));
  return kappa(j) * to_double(ratio);
}

std::vector<double> box_quermassintegrals(const AxisBox& box) {
  const std::size_t d = box.lower.size();
  const auto e = elementary_symmetric(sides(box));
  std::vector<double> w(d + 1);
  for (std::size_t j = 0; j <= d; ++j) {
    w[j] = kappa(j) * e[d - j] / to_double(Rational(cube_intrinsic_volume(d, j)));
  }
  return w;
}

bool has_exact_steiner(const ConvexBody& k) {
  if (std::holds_alternative<Ball>(k.shape()) || std::holds_alternative<AxisBox>(k.shape())) return true;
  if (single_point(k) || k.dim() == 1) return true;
  return k.dim() == 2 && !k.polygon().empty();
}

VolumeEstimate steiner_volume(const ConvexBody& k, double rho, const SamplerConfig& cfg) {
  if (rho < 0) throw std::invalid_argument("rho must be >= 0");
  const std::size_t d = k.dim();
  if (const auto* ball = std::get_if<Ball>(&k.shape())) {
    return exact(kappa(d) * std::pow(ball->radius + rho, static_cast<double>(d)));
  }
  if (const auto* box = std::get_if<AxisBox>(&k.shape())) return exact(box_steiner(*box, rho));
  if (single_point(k)) return exact(kappa(d) * std::pow(rho, static_cast<double>(d)));
  if (d == 1) {
    const auto& bb = k.bounding_box();
    return exact(bb.upper[0] - bb.lower[0] + 2.0 * rho);
  }
  if (d == 2 && !k.polygon().empty()) {
    const double area = *k.exact_volume();
    const double perimeter = surface_area(k).value_or(0.0);
    return exact(area + perimeter * rho + std::numbers::pi * rho * rho);
  }
  // Vol(K) itself is estimated as the inner shell at a depth beyond the
  // inradius, which is all of K.
  const VolumeEstimate body = monte_carlo(k, {inradius(k) + 1.0, OffsetSide::inner}, cfg);
  SamplerConfig shifted = cfg;
  shifted.seed = splitmix64(cfg.seed + 1);
  const VolumeEstimate shell = monte_carlo(k, {rho, OffsetSide::outer}, shifted);
  return {body.value + shell.value, std::hypot(body.std_error, shell.std_error), cfg.samples, cfg.seed, false};
}

VolumeEstimate offset_volume(const ConvexBody& k, const OffsetSpec& spec, const SamplerConfig& cfg) {
  if (!(spec.rho >= 0.0) || spec.rho > 1.0) throw std::invalid_argument("rho must lie in [0, 1]");
  if (spec.rho == 0.0) return exact(0.0);
  const std::size_t d = k.dim();
  const auto dd = static_cast<double>(d);
  const bool outer = spec.side == OffsetSide::outer;
  if (!cfg.force_mc) {
    if (const auto* ball = std::get_if<Ball>(&k.shape())) {
      const double r = ball->radius;
      return outer ? exact(kappa(d) * (std::pow(r + spec.rho, dd) - std::pow(r, dd)))
                   : exact(kappa(d) * (std::pow(r, dd) - std::pow(std::max(r - spec.rho, 0.0), dd)));
    }
    if (const auto* box = std::get_if<AxisBox>(&k.shape())) {
      return outer ? exact(box_steiner(*box, spec.rho) - box_volume(*box, 0.0))
                   : exact(box_volume(*box, 0.0) - box_volume(*box, spec.rho));
    }
    if (single_point(k)) return exact(outer ? kappa(d) * std::pow(spec.rho, dd) : 0.0);
  }
  if (!outer && !k.full_dimensional()) return exact(0.0);
  return monte_carlo(k, spec, cfg);
}

VolumeEstimate boundary_neighborhood_volume(const ConvexBody& k, double rho, const SamplerConfig& cfg) {
  const VolumeEstimate outer = offset_volume(k, {rho, OffsetSide::outer}, cfg);
  SamplerConfig inner_cfg = cfg;
  inner_cfg.seed = splitmix64(cfg.seed ^ 0x1A2B3C4DULL);
  const VolumeEstimate inner = offset_volume(k, {rho, OffsetSide::inner}, inner_cfg);
  VolumeEstimate out;
  out.value = outer.value + inner.value;
  out.std_error = std::hypot(outer.std_error, inner.std_error);
  out.n_samples = outer.n_samples + inner.n_samples;
  out.seed = cfg.seed;
  out.exact = outer.exact && inner.exact;
  return out;
}

double parallel_volume(const ConvexBody& k, double rho) {
  const auto dd = static_cast<double>(k.dim());
  if (const auto* ball = std::get_if<Ball>(&k.shape())) {
    return rho < -ball->radius ? 0.0 : kappa(k.dim()) * std::pow(ball->radius + rho, dd);
  }
  if (const auto* box = std::get_if<AxisBox>(&k.shape())) {
    return rho >= 0 ? box_steiner(*box, rho) : box_volume(*box, -rho);
  }
  throw std::invalid_argument("parallel volume is closed-form only for balls and boxes");
}

double parallel_surface_area(const ConvexBody& k, double rho) {
  const std::size_t d = k.dim();
  if (const auto* ball = std::get_if<Ball>(&k.shape())) {
    if (rho < -ball->radius) return 0.0;
    return static_cast<double>(d) * kappa(d) * std::pow(ball->radius + rho, static_cast<double>(d) - 1.0);
  }
  if (const auto* box = std::get_if<AxisBox>(&k.shape())) {
    const auto s = sides(*box);
    if (rho >= 0) {
      const auto e = elementary_symmetric(s);
      double v = 0.0;
      for (std::size_t j = 1; j <= d; ++j) {
        v += static_cast<double>(j) * kappa(j) * e[d - j] * std::pow(rho, static_cast<double>(j) - 1.0);
      }
      return v;
    }
    double area = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      double face = 2.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != i) face *= std::max(s[j] + 2.0 * rho, 0.0);
      }
      area += face;
    }
    return area;
  }
  throw std::invalid_argument("surface area of K_rho is closed-form only for balls and boxes");
}

DerivativeCheck parallel_volume_derivative_check(const ConvexBody& k, double rho, double h) {
  if (!(h > 0)) throw std::invalid_argument("step h must be positive");
  if (rho - h < -inradius(k)) throw std::invalid_argument("rho - h lies below -r(K)");
  return {(parallel_volume(k, rho + h) - parallel_volume(k, rho - h)) / (2.0 * h), parallel_surface_area(k, rho)};
}

double log_binom_kappa_sum(std::size_t d) {
  if (d == 0) throw std::invalid_argument("d must be >= 1");
  if (d <= 100) {
    double sum = 0.0;
    for (std::size_t j = 1; j <= d; ++j) {
      sum += to_double(Rational(cube_intrinsic_volume(d, j))) * kappa(j);
    }
    return std::log(sum);
  }
  const auto n = static_cast<double>(d);
  std::vector<double> terms(d);
  for (std::size_t j = 1; j <= d; ++j) {
    const auto jj = static_cast<double>(j);
    terms[j - 1] = log_binom(n, jj) + log_kappa(jj);
  }
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (const double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

double log_remark_lower(std::size_t d, double delta) {
  if (d == 0) throw std::invalid_argument("d must be >= 1");
  if (!(delta > 0.0 && delta < 2.0 / 3.0)) throw std::invalid_argument("delta must lie in (0, 2/3)");
  const auto n = static_cast<double>(d);
  return delta * std::pow(n, 2.0 / 3.0 - delta) * std::log(n) - 0.5 * std::log(2.0 * std::numbers::pi) - 1.0 -
         std::log(n);
}

double log_remark_upper(std::size_t d, double kappa_exp) {
  if (d == 0) throw std::invalid_argument("d must be >= 1");
  if (!(kappa_exp > std::numbers::e * std::cbrt(2.0 * std::numbers::pi))) {
    throw std::invalid_argument("kappa must exceed e (2 pi)^{1/3}");
  }
  const auto n = static_cast<double>(d);
  const double e3 = std::exp(3.0);
  return kappa_exp * std::pow(n, 2.0 / 3.0) * std::log(n * std::sqrt(2.0 * e3 * std::numbers::pi));
}

}  // namespace isolat
