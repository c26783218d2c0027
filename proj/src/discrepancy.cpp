#include "isolat/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "isolat/parallel.hpp"
#include "isolat/reduction.hpp"

namespace isolat {

namespace mp = boost::multiprecision;

namespace {

__extension__ using Int128 = __int128;

Rational power(const Rational& x, std::size_t k) {
  Rational r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

// Nonzero |a_i| and the shifted offset after reflecting x_i -> 1 - x_i for
// negative a_i.
template <class T>
void fold(std::span<const T> a, T& b, std::vector<T>& w) {
  for (const auto& ai : a) {
    if (ai > 0) {
      w.push_back(ai);
    } else if (ai < 0) {
      w.push_back(-ai);
      b -= ai;
    }
  }
}

// Σ_S (-1)^{|S|} (b - Σ_S w)_+^k.
Rational alternating_sum(const std::vector<Rational>& w, const Rational& b, std::size_t k) {
  Rational total = 0;
  const std::size_t m = w.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Rational s = b;
    int bits = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1U) {
        s -= w[i];
        ++bits;
      }
    }
    if (s <= 0) continue;
    const Rational t = power(s, k);
    if (bits % 2 == 0) total += t;
    else total -= t;
  }
  return total;
}

Integer factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

HPolytope cube_facets(std::size_t d) {
  HPolytope f;
  for (std::size_t i = 0; i < d; ++i) {
    Point up(d, 0.0), down(d, 0.0);
    up[i] = 1.0;
    down[i] = -1.0;
    f.normals.push_back(up);
    f.offsets.push_back(1.0);
    f.normals.push_back(down);
    f.offsets.push_back(0.0);
  }
  return f;
}

// Exact a·p for a point with numerators over a common denominator.
Rational dot_point(std::span<const double> a, std::span<const std::int64_t> num, std::int64_t den) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0.0) s += exact_rational(a[i]) * num[i];
  }
  return s / den;
}

bool point_in(const ConvexBody& k, std::span<const std::int64_t> num, std::int64_t den) {
  const std::size_t d = num.size();
  const double inv = 1.0 / static_cast<double>(den);
  Point x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = static_cast<double>(num[i]) * inv;
  if (const auto* ball = std::get_if<Ball>(&k.shape())) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += (x[i] - ball->center[i]) * (x[i] - ball->center[i]);
    const double r2 = ball->radius * ball->radius;
    if (std::fabs(s - r2) > 1e-9) return s < r2;
    Rational es = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const Rational diff = Rational(num[i], den) - exact_rational(ball->center[i]);
      es += diff * diff;
    }
    const Rational r = exact_rational(ball->radius);
    return es <= r * r;
  }
  if (const auto* box = std::get_if<AxisBox>(&k.shape())) {
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] < box->lower[i] - 1e-12 || x[i] > box->upper[i] + 1e-12) return false;
      if (x[i] > box->lower[i] + 1e-12 && x[i] < box->upper[i] - 1e-12) continue;
      const Rational xi(num[i], den);
      if (xi < exact_rational(box->lower[i]) || xi > exact_rational(box->upper[i])) return false;
    }
    return true;
  }
  if (const auto* hp = std::get_if<HPolytope>(&k.shape())) {
    for (std::size_t f = 0; f < hp->normals.size(); ++f) {
      const auto& a = hp->normals[f];
      double v = -hp->offsets[f];
      double scale = std::fabs(hp->offsets[f]);
      for (std::size_t i = 0; i < d; ++i) {
        v += a[i] * x[i];
        scale += std::fabs(a[i]);
      }
      if (v > 1e-9 * scale) return false;
      if (v < -1e-9 * scale) continue;
      if (dot_point(a, num, den) > exact_rational(hp->offsets[f])) return false;
    }
    return true;
  }
  return k.contains(x);
}

std::string format_vector(std::span<const std::int64_t> h) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
  os << ')';
  return os.str();
}

IntVector to_int_vector(const RationalVector& v) {
  IntVector out;
  for (const auto& x : v) out.push_back(to_int64(mp::numerator(x)));
  return out;
}

// Exact area of the polygon {x : n_i·x <= b_i} with double data.
Rational polygon_area(const HPolytope& p) {
  const std::size_t m = p.normals.size();
  std::vector<RationalVector> n(m);
  RationalVector b(m);
  for (std::size_t i = 0; i < m; ++i) {
    n[i] = {exact_rational(p.normals[i][0]), exact_rational(p.normals[i][1])};
    b[i] = exact_rational(p.offsets[i]);
  }
  std::vector<RationalVector> verts;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Rational det = n[i][0] * n[j][1] - n[i][1] * n[j][0];
      if (det == 0) continue;
      RationalVector x{(b[i] * n[j][1] - n[i][1] * b[j]) / det, (n[i][0] * b[j] - b[i] * n[j][0]) / det};
      bool ok = true;
      for (std::size_t k = 0; k < m && ok; ++k) ok = n[k][0] * x[0] + n[k][1] * x[1] <= b[k];
      if (ok && std::find(verts.begin(), verts.end(), x) == verts.end()) verts.push_back(std::move(x));
    }
  }
  if (verts.size() < 3) return 0;
  RationalVector c{0, 0};
  for (const auto& v : verts) {
    c[0] += v[0];
    c[1] += v[1];
  }
  c[0] /= static_cast<long>(verts.size());
  c[1] /= static_cast<long>(verts.size());
  auto half = [&](const RationalVector& v) {
    const Rational dx = v[0] - c[0], dy = v[1] - c[1];
    return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
  };
  std::sort(verts.begin(), verts.end(), [&](const RationalVector& u, const RationalVector& v) {
    const int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    return (u[0] - c[0]) * (v[1] - c[1]) - (u[1] - c[1]) * (v[0] - c[0]) > 0;
  });
  Rational area = 0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& u = verts[i];
    const auto& v = verts[(i + 1) % verts.size()];
    area += u[0] * v[1] - v[0] * u[1];
  }
  return abs(area) / 2;
}

DiscrepancyWitness finish(ConvexBody body, WitnessFamily family, const LatticePointSet& pts, const Rational& vol,
                          std::string description) {
  DiscrepancyWitness w{std::move(body), family};
  w.inside_count = count_points(pts, w.body);
  w.exact_volume = vol;
  w.volume = {to_double(vol), 0.0, 0, 0, true};
  const Rational n(static_cast<long long>(pts.size()));
  w.local_value = to_double(abs(Rational(w.inside_count) / n - vol));
  w.certified = true;
  w.description = std::move(description);
  return w;
}

std::optional<DiscrepancyWitness> halfspace_candidate(const LatticePointSet& pts, std::uint64_t seed,
                                                      std::size_t index) {
  const std::size_t d = pts.dim;
  RandomStream rng(seed, (std::uint64_t{1} << 32) + index);
  Point a(d);
  for (auto& v : a) v = rng.normal();
  const std::vector<double> x = pts.to_double();
  const std::size_t n = pts.size();
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += a[i] * x[j * d + i];
    t[j] = s;
  }
  std::sort(t.begin(), t.end());
  double lo = 0.0;
  for (const double v : a) lo += std::min(v, 0.0);
  const double scale = std::accumulate(a.begin(), a.end(), 0.0, [](double s, double v) { return s + std::fabs(v); });
  const double eta = 1e-9 * scale;
  double best = -1.0;
  double best_b = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // Just below t_j: j points inside. At t_j: j+1 points inside.
    const double below = t[j] - eta;
    if (below > lo + eta) {
      const double v = halfspace_cube_volume(a, below) - static_cast<double>(j) / static_cast<double>(n);
      if (std::fabs(v) > best) {
        best = std::fabs(v);
        best_b = below;
      }
    }
    const double at = halfspace_cube_volume(a, t[j]) - static_cast<double>(j + 1) / static_cast<double>(n);
    if (t[j] > lo + eta && std::fabs(at) > best) {
      best = std::fabs(at);
      best_b = t[j];
    }
  }
  if (best < 0) return std::nullopt;
  HPolytope h = cube_facets(d);
  h.normals.push_back(a);
  h.offsets.push_back(best_b);
  RationalVector ar;
  for (const double v : a) ar.push_back(exact_rational(v));
  const Rational vol = halfspace_cube_volume(ar, exact_rational(best_b));
  std::ostringstream os;
  os.precision(17);
  os << "random half-space #" << index << " b=" << best_b;
  return finish(ConvexBody(std::move(h)), WitnessFamily::halfspace, pts, vol, os.str());
}

std::optional<DiscrepancyWitness> ball_candidate(const LatticePointSet& pts, std::uint64_t seed, std::size_t index) {
  const std::size_t d = pts.dim;
  RandomStream rng(seed, (std::uint64_t{2} << 32) + index);
  Point c(d);
  for (auto& v : c) v = rng.uniform();
  double r = std::numeric_limits<double>::infinity();
  for (const double v : c) r = std::min({r, v, 1.0 - v});
  const std::vector<double> x = pts.to_double();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += (x[j * d + i] - c[i]) * (x[j * d + i] - c[i]);
    r = std::min(r, std::sqrt(s) * (1.0 - 1e-9));
  }
  if (!(r > 1e-12)) return std::nullopt;
  DiscrepancyWitness w{ConvexBody(Ball{c, r}), WitnessFamily::ball};
  w.inside_count = count_points(pts, w.body);
  const double vol = kappa(d) * std::pow(r, static_cast<double>(d));
  w.volume = {vol, 0.0, 0, 0, false};
  w.uncertainty = 1e-12 * std::max(vol, 1.0);
  w.local_value = std::fabs(static_cast<double>(w.inside_count) / static_cast<double>(pts.size()) - vol);
  w.certified = false;
  w.description = "empty ball #" + std::to_string(index);
  return w;
}

// Clips a convex polygon (doubles) by n·x <= b.
std::vector<Point> clip(const std::vector<Point>& poly, const Point& n, double b) {
  std::vector<Point> out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % m];
    const double fp = n[0] * p[0] + n[1] * p[1] - b;
    const double fq = n[0] * q[0] + n[1] * q[1] - b;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      const double s = fp / (fp - fq);
      out.push_back({p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])});
    }
  }
  return out;
}

std::optional<DiscrepancyWitness> hull_candidate(const LatticePointSet& pts, std::uint64_t seed, std::size_t index) {
  RandomStream rng(seed, (std::uint64_t{3} << 32) + index);
  const Point c{rng.uniform(), rng.uniform()};
  const std::vector<double> x = pts.to_double();
  std::vector<Point> normals;
  std::vector<double> offsets;
  std::vector<Point> poly{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (std::size_t j = 0; j < pts.size(); ++j) {
    Point n{x[2 * j] - c[0], x[2 * j + 1] - c[1]};
    const double len = std::hypot(n[0], n[1]);
    if (len < 1e-9) return std::nullopt;
    // Half-plane through (just short of) the point, facing away from c. The
    // exact count below catches any point that rounding lets inside.
    const double b = n[0] * x[2 * j] + n[1] * x[2 * j + 1] - 1e-9 * len;
    normals.push_back(n);
    offsets.push_back(b);
    poly = clip(poly, n, b);
    if (poly.size() < 3) return std::nullopt;
  }
  HPolytope h = cube_facets(2);
  for (std::size_t j = 0; j < normals.size(); ++j) {
    double slack = std::numeric_limits<double>::infinity();
    for (const auto& v : poly) slack = std::min(slack, offsets[j] - normals[j][0] * v[0] - normals[j][1] * v[1]);
    if (slack <= 1e-7 * std::hypot(normals[j][0], normals[j][1])) {
      h.normals.push_back(normals[j]);
      h.offsets.push_back(offsets[j]);
    }
  }
  const Rational area = polygon_area(h);
  return finish(ConvexBody(std::move(h)), WitnessFamily::hull, pts, area, "empty polygon #" + std::to_string(index));
}

bool better(const DiscrepancyWitness& a, const DiscrepancyWitness& b) { return a.local_value > b.local_value; }

}  // namespace

Rational halfspace_cube_volume(const RationalVector& a, const Rational& b) {
  Rational shifted = b;
  std::vector<Rational> w;
  fold<Rational>(a, shifted, w);
  if (w.empty()) return shifted >= 0 ? 1 : 0;
  if (shifted <= 0) return 0;
  Rational total = 0;
  for (const auto& v : w) total += v;
  if (shifted >= total) return 1;
  Rational denom = Rational(factorial(w.size()));
  for (const auto& v : w) denom *= v;
  return alternating_sum(w, shifted, w.size()) / denom;
}

double halfspace_cube_volume(std::span<const double> a, double b) {
  double shifted = b;
  std::vector<double> w;
  fold<double>(a, shifted, w);
  if (w.empty()) return shifted >= 0 ? 1.0 : 0.0;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (shifted <= 0) return 0.0;
  if (shifted >= total) return 1.0;
  // Evaluate on the smaller side to limit cancellation.
  const bool flip = shifted > total / 2;
  const double s0 = flip ? total - shifted : shifted;
  const std::size_t m = w.size();
  double sum = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    double s = s0;
    int bits = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1U) {
        s -= w[i];
        ++bits;
      }
    }
    if (s <= 0) continue;
    const double t = std::pow(s, static_cast<double>(m));
    sum += bits % 2 == 0 ? t : -t;
  }
  double denom = std::tgamma(static_cast<double>(m) + 1.0);
  for (const double v : w) denom *= v;
  const double v = std::clamp(sum / denom, 0.0, 1.0);
  return flip ? 1.0 - v : v;
}

SectionVolume hyperplane_section_volume(const RationalVector& a, const Rational& b) {
  Rational shifted = b;
  std::vector<Rational> w;
  fold<Rational>(a, shifted, w);
  if (w.empty()) throw std::invalid_argument("section of a zero normal");
  SectionVolume out;
  double nn = 0.0;
  for (const auto& v : a) nn += to_double(v * v);
  out.norm = std::sqrt(nn);
  const std::size_t m = w.size();
  Rational total = 0;
  for (const auto& v : w) total += v;
  if (shifted <= 0 || shifted >= total) {
    out.derivative = 0;
    return out;
  }
  Rational denom = Rational(factorial(m - 1));
  for (const auto& v : w) denom *= v;
  out.derivative = alternating_sum(w, shifted, m - 1) / denom;
  return out;
}

std::int64_t count_points(const LatticePointSet& points, const ConvexBody& k) {
  if (k.dim() != points.dim) throw std::invalid_argument("body and point set differ in dimension");
  std::int64_t c = 0;
  for (std::size_t i = 0; i < points.size(); ++i) c += point_in(k, points.point(i), points.denominator) ? 1 : 0;
  return c;
}

std::int64_t count_in_slab(const LatticePointSet& points, std::span<const std::int64_t> h, const Rational& lo,
                           const Rational& hi, bool open) {
  std::int64_t c = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points.point(i);
    Int128 t = 0;
    for (std::size_t k = 0; k < h.size(); ++k) t += static_cast<Int128>(h[k]) * p[k];
    const Rational v(Integer(static_cast<long long>(t)), Integer(points.denominator));
    const bool in = open ? (lo < v && v < hi) : (lo <= v && v <= hi);
    c += in ? 1 : 0;
  }
  return c;
}

std::string_view to_string(WitnessFamily f) {
  switch (f) {
    case WitnessFamily::dual_slab: return "dual-slab";
    case WitnessFamily::halfspace: return "halfspace";
    case WitnessFamily::ball: return "ball";
    case WitnessFamily::hull: return "hull";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::pass_with_uncertainty: return "PASS-with-uncertainty";
    case Verdict::fail: return "FAIL";
    case Verdict::recorded: return "RECORDED";
  }
  return "?";
}

Rational slab_margin(std::span<const std::int64_t> h) {
  double nn = 0.0;
  for (const auto v : h) nn += static_cast<double>(v) * static_cast<double>(v);
  const int e = static_cast<int>(std::floor(std::log2(1e-9 * std::sqrt(nn))));
  Integer p = 1;
  p <<= -e;
  return Rational(Integer(1), p);
}

DiscrepancyWitness slab_witness(const LatticePointSet& points, std::optional<IntVector> h) {
  const IntegrationLattice& lat = points.source;
  const std::size_t d = lat.dim;
  if (!h) h = to_int_vector(shortest_vector(dual_basis(lat).basis).vector);
  const HyperplaneFamily fam = hyperplane_family(lat, *h);
  const Rational eps = slab_margin(*h);
  RationalVector a;
  for (const auto v : *h) a.push_back(Rational(v));
  std::int64_t best_k = fam.k_min;
  Rational best_vol = -1;
  for (std::int64_t k = fam.k_min; k < fam.k_max; ++k) {
    const Rational vol = halfspace_cube_volume(a, Rational(k + 1) - eps) - halfspace_cube_volume(a, Rational(k) + eps);
    if (vol > best_vol) {
      best_vol = vol;
      best_k = k;
    }
  }
  if (!(best_vol > 0)) throw std::logic_error("no slab meets the cube");
  const Rational lo = Rational(best_k) + eps;
  const Rational hi = Rational(best_k + 1) - eps;
  const double lo_d = to_double(lo);
  const double hi_d = to_double(hi);
  if (exact_rational(lo_d) != lo || exact_rational(hi_d) != hi) throw std::logic_error("slab bounds not exact");
  HPolytope poly = cube_facets(d);
  Point up(d), down(d);
  for (std::size_t i = 0; i < d; ++i) {
    up[i] = static_cast<double>((*h)[i]);
    down[i] = -up[i];
  }
  poly.normals.push_back(up);
  poly.offsets.push_back(hi_d);
  poly.normals.push_back(down);
  poly.offsets.push_back(-lo_d);
  DiscrepancyWitness w = finish(ConvexBody(std::move(poly)), WitnessFamily::dual_slab, points, best_vol,
                                "slab h=" + format_vector(*h) + " k=" + std::to_string(best_k));
  const std::int64_t exact_count = count_in_slab(points, *h, lo, hi, false);
  if (exact_count != 0 || w.inside_count != 0) throw std::logic_error("dual slab contains lattice points");
  w.slab_index = best_k;
  return w;
}

IsotropicResult isotropic_lower_bound(const LatticePointSet& points, const SearchConfig& cfg) {
  if (cfg.budget == 0) throw std::invalid_argument("search budget must be >= 1");
  if (points.size() == 0) throw std::invalid_argument("empty point set");
  const std::size_t d = points.dim;
  std::vector<DiscrepancyWitness> all;

  const auto duals = short_vectors(dual_basis(points.source).basis, cfg.dual_slabs);
  for (const auto& v : duals) all.push_back(slab_witness(points, to_int_vector(v.vector)));

  auto run = [&](std::size_t count, auto&& make) {
    std::vector<std::optional<DiscrepancyWitness>> slots(count);
    parallel_for(count, cfg.workers, [&](std::size_t i) { slots[i] = make(points, cfg.seed, i); });
    for (auto& s : slots) {
      if (s) all.push_back(std::move(*s));
    }
  };
  run(cfg.budget, halfspace_candidate);
  const std::size_t extra = std::max<std::size_t>(1, cfg.budget / 4);
  run(extra, ball_candidate);
  if (d == 2) run(extra, hull_candidate);

  std::optional<std::size_t> best;
  std::optional<std::size_t> best_unc;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto& slot = all[i].certified ? best : best_unc;
    if (!slot || better(all[i], all[*slot])) slot = i;
  }
  IsotropicResult res{all[*best], std::nullopt, {}};
  if (best_unc) res.best_uncertified = all[*best_unc];
  res.witnesses = std::move(all);
  return res;
}

Thm1Report verify_thm1(const IntegrationLattice& lat, const SearchConfig& cfg) {
  const SpectralReport spec = spectral_test(lat);
  const LatticePointSet pts = enumerate_points(lat);
  const IsotropicResult res = isotropic_lower_bound(pts, cfg);
  const auto d = static_cast<double>(lat.dim);
  Thm1Report r;
  r.sigma = spec.sigma;
  r.j_lower = res.best.local_value;
  r.best_family = std::string(to_string(res.best.family));
  r.bound = d * std::pow(2.0, 2.0 * (d + 1.0)) * spec.sigma;
  r.old_bound = d * d * std::pow(2.0, d) * spec.sigma;
  r.verdict = r.j_lower <= std::min(1.0, r.bound) ? Verdict::pass : Verdict::fail;
  const DiscrepancyWitness slab = slab_witness(pts, spec.shortest_dual);
  r.slab_value = slab.local_value;
  RationalVector a;
  for (const auto v : spec.shortest_dual) a.push_back(Rational(v));
  r.slab_section = hyperplane_section_volume(a, Rational(2 * slab.slab_index + 1, 2)).value();
  r.slab_ratio = r.slab_value / (spec.sigma * r.slab_section);
  return r;
}

}  // namespace isolat
