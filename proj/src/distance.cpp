#include "isolat/distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "isolat/parallel.hpp"
#include "isolat/reduction.hpp"

namespace isolat {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

// Calls fn(x) for every point of the tensor grid whose first coordinate has
// index `first`; coordinates are (index + shift) / scale.
template <class Fn>
void grid_slice(std::size_t n, std::size_t d, std::size_t first, double shift, double scale, Fn&& fn) {
  std::vector<std::size_t> idx(d, 0);
  idx[0] = first;
  Point x(d);
  x[0] = (static_cast<double>(first) + shift) / scale;
  const std::size_t rest = ipow(n, d - 1);
  for (std::size_t lin = 0; lin < rest; ++lin) {
    std::size_t r = lin;
    for (std::size_t k = 1; k < d; ++k) {
      x[k] = (static_cast<double>(r % n) + shift) / scale;
      r /= n;
    }
    fn(x);
  }
}

}  // namespace

NearestIndex::NearestIndex(std::vector<double> coords, std::size_t dim, bool torus)
    : coords_(std::move(coords)), dim_(dim), torus_(torus) {
  if (dim_ == 0) throw std::invalid_argument("zero dimension");
  if (coords_.empty() || coords_.size() % dim_ != 0) throw std::invalid_argument("empty point set");
  const std::size_t n = size();
  if (torus_ || dim_ > 4 || n < 16) return;
  cells_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 1.0 / dim_))));
  const std::size_t total = ipow(cells_, dim_);
  std::vector<std::uint32_t> cell_of(n);
  bucket_start_.assign(total + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t k = dim_; k-- > 0;) {
      const auto ck = std::min(cells_ - 1, static_cast<std::size_t>(std::max(0.0, coords_[i * dim_ + k]) * cells_));
      c = c * cells_ + ck;
    }
    cell_of[i] = static_cast<std::uint32_t>(c);
    ++bucket_start_[c + 1];
  }
  for (std::size_t c = 0; c < total; ++c) bucket_start_[c + 1] += bucket_start_[c];
  bucket_items_.resize(n);
  std::vector<std::uint32_t> fill(bucket_start_.begin(), bucket_start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) bucket_items_[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
}

NearestIndex::NearestIndex(const LatticePointSet& points, bool torus)
    : NearestIndex(points.to_double(), points.dim, torus) {}

std::pair<std::size_t, double> NearestIndex::brute(std::span<const double> x) const {
  std::size_t best = 0;
  double best_d2 = kInfinity;
  for (std::size_t i = 0; i < size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      double dk = std::fabs(x[k] - coords_[i * dim_ + k]);
      if (torus_) dk = std::min(dk, 1.0 - dk);
      s += dk * dk;
    }
    if (s < best_d2) {
      best_d2 = s;
      best = i;
    }
  }
  return {best, std::sqrt(best_d2)};
}

std::pair<std::size_t, double> NearestIndex::nearest(std::span<const double> x) const {
  if (x.size() != dim_) throw std::invalid_argument("query has wrong dimension");
  if (cells_ == 0) return brute(x);
  const double w = 1.0 / static_cast<double>(cells_);
  std::array<std::int64_t, 4> home{};
  for (std::size_t k = 0; k < dim_; ++k) {
    const double c = std::floor(x[k] * static_cast<double>(cells_));
    home[k] = std::clamp<std::int64_t>(static_cast<std::int64_t>(c), 0, static_cast<std::int64_t>(cells_) - 1);
  }
  std::size_t best = size();
  double best_d2 = kInfinity;
  const auto cells = static_cast<std::int64_t>(cells_);
  for (std::int64_t r = 0; r <= cells; ++r) {
    std::array<std::int64_t, 4> lo{}, hi{};
    for (std::size_t k = 0; k < dim_; ++k) {
      lo[k] = std::max<std::int64_t>(0, home[k] - r);
      hi[k] = std::min<std::int64_t>(cells - 1, home[k] + r);
    }
    std::array<std::int64_t, 4> cur = lo;
    while (true) {
      std::int64_t cheb = 0;
      for (std::size_t k = 0; k < dim_; ++k) cheb = std::max(cheb, std::abs(cur[k] - home[k]));
      if (cheb == r) {
        std::size_t c = 0;
        for (std::size_t k = dim_; k-- > 0;) c = c * cells_ + static_cast<std::size_t>(cur[k]);
        for (std::uint32_t it = bucket_start_[c]; it < bucket_start_[c + 1]; ++it) {
          const std::uint32_t i = bucket_items_[it];
          const double s = sq_dist(x, point(i));
          if (s < best_d2 || (s == best_d2 && i < best)) {
            best_d2 = s;
            best = i;
          }
        }
      }
      std::size_t k = 0;
      while (k < dim_ && cur[k] == hi[k]) {
        cur[k] = lo[k];
        ++k;
      }
      if (k == dim_) break;
      ++cur[k];
    }
    const double reach = static_cast<double>(r) * w;
    if (best < size() && best_d2 < reach * reach) break;
  }
  return {best, std::sqrt(best_d2)};
}

double dist_to_pointset(std::span<const double> x, const NearestIndex& index) { return index.distance(x); }

CoveringRadius covering_radius(const NearestIndex& index, double tol, std::uint64_t max_boxes) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const std::size_t d = index.dim();
  const auto n = static_cast<double>(index.size());
  const double cap = std::floor(std::pow(1e6, 1.0 / static_cast<double>(d)));
  const auto m = static_cast<std::size_t>(
      std::clamp(std::ceil(2.0 * std::pow(n, 1.0 / static_cast<double>(d))), 1.0, std::max(cap, 1.0)));

  struct Box {
    double ub;
    double size;
    std::size_t slot;
    bool operator<(const Box& o) const { return ub < o.ub || (ub == o.ub && slot > o.slot); }
  };
  std::vector<double> pool;
  std::priority_queue<Box> queue;
  CoveringRadius res;
  res.witness.assign(d, 0.0);
  Point centre(d), corner(d);

  auto push = [&](std::span<const double> lo, double size) {
    for (std::size_t k = 0; k < d; ++k) centre[k] = lo[k] + size / 2;
    const auto [q, dc] = index.nearest(centre);
    if (dc > res.lb) {
      res.lb = dc;
      res.witness = centre;
    }
    const auto p = index.point(q);
    for (std::size_t k = 0; k < d; ++k) {
      corner[k] = std::fabs(lo[k] - p[k]) >= std::fabs(lo[k] + size - p[k]) ? lo[k] : lo[k] + size;
    }
    const double ub = std::sqrt(sq_dist(corner, p));
    const double dk = index.distance(corner);
    if (dk > res.lb) {
      res.lb = dk;
      res.witness = corner;
    }
    const std::size_t slot = pool.size();
    pool.insert(pool.end(), lo.begin(), lo.end());
    queue.push({ub, size, slot});
    ++res.boxes;
  };

  Point lo(d);
  const double w = 1.0 / static_cast<double>(m);
  for (std::size_t lin = 0; lin < ipow(m, d); ++lin) {
    std::size_t r = lin;
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = static_cast<double>(r % m) * w;
      r /= m;
    }
    push(lo, w);
  }
  while (!queue.empty()) {
    const Box top = queue.top();
    if (top.ub - res.lb <= tol) break;
    if (res.boxes >= max_boxes) {
      res.budget_exhausted = true;
      break;
    }
    queue.pop();
    const Point base(pool.begin() + static_cast<std::ptrdiff_t>(top.slot),
                     pool.begin() + static_cast<std::ptrdiff_t>(top.slot + d));
    const double half = top.size / 2;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      for (std::size_t k = 0; k < d; ++k) lo[k] = base[k] + ((mask >> k & 1U) ? half : 0.0);
      push(lo, half);
    }
  }
  res.ub = queue.empty() ? res.lb : std::max(res.lb, queue.top().ub);
  return res;
}

std::vector<DistanceNormReport> distance_norms(const NearestIndex& index, const std::vector<double>& gammas,
                                               const NormConfig& cfg) {
  for (const double g : gammas) {
    if (!(g > 0)) throw std::invalid_argument("gamma must lie in (0, inf]");
  }
  const std::size_t d = index.dim();
  std::vector<DistanceNormReport> out(gammas.size());
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    out[i].gamma = gammas[i];
    out[i].seed = cfg.seed;
    if (std::isfinite(gammas[i])) finite.push_back(i);
  }

  if (d == 1 && !cfg.force_mc) {
    std::vector<double> p(index.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = index.point(i)[0];
    std::sort(p.begin(), p.end());
    for (auto& r : out) {
      const double g = r.gamma;
      double value = 0.0;
      if (std::isfinite(g)) {
        double s = std::pow(p.front(), g + 1) / (g + 1) + std::pow(1.0 - p.back(), g + 1) / (g + 1);
        for (std::size_t i = 0; i + 1 < p.size(); ++i) s += 2.0 * std::pow((p[i + 1] - p[i]) / 2, g + 1) / (g + 1);
        value = std::pow(s, 1.0 / g);
      } else {
        value = std::max(p.front(), 1.0 - p.back());
        for (std::size_t i = 0; i + 1 < p.size(); ++i) value = std::max(value, (p[i + 1] - p[i]) / 2);
      }
      r.value = r.lower_certified = r.upper_certified = value;
      r.method = "exact1d";
    }
    return out;
  }

  for (auto& r : out) {
    if (std::isfinite(r.gamma)) continue;
    const CoveringRadius cr = covering_radius(index, cfg.tol);
    r.lower_certified = cr.lb;
    r.upper_certified = cr.ub;
    r.value = 0.5 * (cr.lb + cr.ub);
    r.method = "refine";
  }
  if (finite.empty()) return out;

  const std::size_t nf = finite.size();
  if (d <= 3 && !cfg.force_mc) {
    const std::size_t n = cfg.resolution;
    if (n == 0) throw std::invalid_argument("grid resolution must be positive");
    const double h = 1.0 / static_cast<double>(n);
    const double slack = h * std::sqrt(static_cast<double>(d)) / 2;
    // Per-slice sums: value, lower, upper for each finite γ.
    std::vector<double> sums(n * nf * 3, 0.0);
    parallel_for(n, cfg.workers, [&](std::size_t first) {
      double* s = &sums[first * nf * 3];
      grid_slice(n, d, first, 0.5, static_cast<double>(n), [&](const Point& x) {
        const double f = index.distance(x);
        for (std::size_t j = 0; j < nf; ++j) {
          const double g = gammas[finite[j]];
          s[3 * j] += std::pow(f, g);
          s[3 * j + 1] += std::pow(std::max(f - slack, 0.0), g);
          s[3 * j + 2] += std::pow(f + slack, g);
        }
      });
    });
    const double cell = std::pow(h, static_cast<double>(d));
    for (std::size_t j = 0; j < nf; ++j) {
      double v = 0.0, lo = 0.0, hi = 0.0;
      for (std::size_t first = 0; first < n; ++first) {
        v += sums[(first * nf + j) * 3];
        lo += sums[(first * nf + j) * 3 + 1];
        hi += sums[(first * nf + j) * 3 + 2];
      }
      auto& r = out[finite[j]];
      const double g = r.gamma;
      r.value = std::pow(v * cell, 1.0 / g);
      r.lower_certified = std::pow(lo * cell, 1.0 / g);
      r.upper_certified = std::pow(hi * cell, 1.0 / g);
      r.method = "grid";
      r.resolution = n;
    }
  }

  if (cfg.samples > 0) {
    const std::uint64_t ns = cfg.samples;
    const std::size_t chunks = static_cast<std::size_t>((ns + 65535) / 65536);
    std::vector<double> sums(chunks * nf * 2, 0.0);
    parallel_for(chunks, cfg.workers, [&](std::size_t c) {
      RandomStream rng(cfg.seed, c);
      Point x(d);
      const std::uint64_t end = std::min<std::uint64_t>(ns, (c + 1) * 65536);
      for (std::uint64_t s = c * 65536; s < end; ++s) {
        for (auto& v : x) v = rng.uniform();
        const double f = index.distance(x);
        for (std::size_t j = 0; j < nf; ++j) {
          const double t = std::pow(f, gammas[finite[j]]);
          sums[(c * nf + j) * 2] += t;
          sums[(c * nf + j) * 2 + 1] += t * t;
        }
      }
    });
    for (std::size_t j = 0; j < nf; ++j) {
      double s1 = 0.0, s2 = 0.0;
      for (std::size_t c = 0; c < chunks; ++c) {
        s1 += sums[(c * nf + j) * 2];
        s2 += sums[(c * nf + j) * 2 + 1];
      }
      const auto nn = static_cast<double>(ns);
      const double mean = s1 / nn;
      const double var = std::max(s2 / nn - mean * mean, 0.0);
      const double se_mean = std::sqrt(var / nn);
      auto& r = out[finite[j]];
      const double g = r.gamma;
      r.mc_value = std::pow(mean, 1.0 / g);
      // Delta method for mean^{1/γ}.
      r.mc_std_error = mean > 0 ? std::pow(mean, 1.0 / g - 1.0) * se_mean / g : 0.0;
      r.samples = ns;
      if (r.method.empty()) {
        r.method = "mc";
        r.value = r.mc_value;
        r.lower_certified = std::max(0.0, r.mc_value - 3.0 * r.mc_std_error);
        r.upper_certified = r.mc_value + 3.0 * r.mc_std_error;
      }
    }
  } else {
    for (const std::size_t i : finite) {
      if (out[i].method.empty()) throw std::invalid_argument("Monte Carlo norms need samples > 0");
    }
  }
  return out;
}

DistanceNormReport distance_norm(const NearestIndex& index, double gamma, const NormConfig& cfg) {
  return distance_norms(index, {gamma}, cfg).front();
}

SlabUnion slab_union_volume(const IntegrationLattice& lat, std::span<const std::int64_t> h, const Rational& t) {
  if (!(t > 0 && t < Rational(1, 2))) throw std::invalid_argument("t must lie in (0, 1/2)");
  const HyperplaneFamily fam = hyperplane_family(lat, h);
  RationalVector a;
  for (const auto v : h) a.push_back(Rational(v));
  Rational vol = 0;
  for (std::int64_t k = fam.k_min; k <= fam.k_max; ++k) {
    vol += halfspace_cube_volume(a, Rational(k) + t) - halfspace_cube_volume(a, Rational(k) - t);
  }
  return {vol, Rational(1) - vol};
}

double cube_section_bound(std::size_t d) { return d == 1 ? 1.0 : std::sqrt(2.0); }

Prop1Report verify_prop1(const IntegrationLattice& lat, const std::vector<double>& gammas, const NormConfig& cfg) {
  const SpectralReport spec = spectral_test(lat);
  const std::size_t d = lat.dim;
  const auto dd = static_cast<double>(d);
  Prop1Report rep;
  rep.sigma = spec.sigma;
  rep.v_d = cube_section_bound(d);
  rep.t_d = 1.0 / (12.0 * std::sqrt(dd) * rep.v_d);
  rep.c_d = rep.t_d;
  if (d == 1) {
    rep.t_certified = Rational(1, 12);
  } else {
    // Dyadic t' >= t_d; Vol(A_t) is nonincreasing in t.
    constexpr double scale = 1099511627776.0;  // 2^40
    rep.t_certified = Rational(Integer(static_cast<long long>(std::ceil(rep.t_d * scale)) + 1), Integer(1) << 40);
  }
  const SlabUnion su = slab_union_volume(lat, spec.shortest_dual, rep.t_certified);
  rep.volume_a = su.complement_volume;
  rep.volume_ok = su.complement_volume >= Rational(1, 2);
  rep.volume_b = to_double(su.union_volume);
  rep.volume_b_bound = (2.0 * std::sqrt(dd) + 4.0 * spec.sigma) * rep.v_d * to_double(rep.t_certified);

  const NearestIndex index(enumerate_points(lat));
  std::vector<double> all = gammas;
  if (std::find(all.begin(), all.end(), kInfinity) == all.end()) all.push_back(kInfinity);
  const auto norms = distance_norms(index, all, cfg);
  rep.verdict = rep.volume_ok ? Verdict::pass : Verdict::fail;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const auto& nr = norms[i];
    if (std::isinf(nr.gamma)) rep.upper_ratio = nr.value / spec.sigma;
    if (i >= gammas.size()) continue;
    Prop1Row row;
    row.gamma = nr.gamma;
    row.norm = nr.value;
    row.norm_lower = nr.lower_certified;
    row.norm_upper = nr.upper_certified;
    row.lhs = rep.c_d * spec.sigma / std::pow(2.0, 1.0 / nr.gamma);
    row.ratio = nr.value / spec.sigma;
    row.method = nr.method;
    if (row.lhs <= row.norm_lower) row.verdict = nr.method == "mc" ? Verdict::pass_with_uncertainty : Verdict::pass;
    else if (row.lhs <= row.norm_upper) row.verdict = Verdict::pass_with_uncertainty;
    else row.verdict = Verdict::fail;
    if (row.verdict == Verdict::fail) rep.verdict = Verdict::fail;
    else if (row.verdict == Verdict::pass_with_uncertainty && rep.verdict == Verdict::pass) rep.verdict = row.verdict;
    rep.rows.push_back(row);
  }
  return rep;
}

ProxySpec proxy_spec(std::int64_t s, const Rational& inv_p, const Rational& inv_q, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("zero dimension");
  if (inv_p < 0 || inv_p > 1 || inv_q < 0 || inv_q > 1) throw std::invalid_argument("p and q must lie in [1, inf]");
  if (!(Rational(s) > Rational(static_cast<long long>(dim)) * inv_p)) throw std::invalid_argument("need s > d/p");
  ProxySpec spec;
  spec.s = s;
  spec.inv_p = inv_p;
  spec.inv_q = inv_q;
  spec.dim = dim;
  const Rational diff = inv_p - inv_q;
  spec.exponent = Rational(s) - Rational(static_cast<long long>(dim)) * (diff > 0 ? diff : Rational(0));
  if (inv_q > inv_p) spec.gamma = Rational(s) / (inv_q - inv_p);
  return spec;
}

double error_proxy(const NearestIndex& index, const ProxySpec& spec, const NormConfig& cfg) {
  return std::pow(distance_norm(index, spec.gamma_value(), cfg).value, to_double(spec.exponent));
}

double nn_baseline_error(const NearestIndex& index, const TestFunction& f, double q, std::size_t resolution,
                         unsigned workers) {
  if (!(q > 0)) throw std::invalid_argument("q must lie in (0, inf]");
  const std::size_t d = index.dim();
  const bool sup = std::isinf(q);
  const std::size_t n = sup ? resolution + 1 : resolution;
  std::vector<double> acc(n, 0.0);
  parallel_for(n, workers, [&](std::size_t first) {
    grid_slice(n, d, first, sup ? 0.0 : 0.5, static_cast<double>(resolution), [&](const Point& x) {
      const auto [i, dist] = index.nearest(x);
      (void)dist;
      const double e = std::fabs(f(x) - f(index.point(i)));
      if (sup) acc[first] = std::max(acc[first], e);
      else acc[first] += std::pow(e, q);
    });
  });
  if (sup) return *std::max_element(acc.begin(), acc.end());
  double s = 0.0;
  for (const double v : acc) s += v;
  return std::pow(s * std::pow(1.0 / static_cast<double>(resolution), static_cast<double>(d)), 1.0 / q);
}

}  // namespace isolat
