#include "isolat/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "isolat/parallel.hpp"
#include "isolat/simplex.hpp"
#include "isolat/volume.hpp"

namespace isolat {

namespace {

constexpr double kContainTol = 1e-9;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::size_t shape_dim(const ConvexBody::Shape& shape) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) return s.center.size();
        if constexpr (std::is_same_v<T, AxisBox>) return s.lower.size();
        if constexpr (std::is_same_v<T, HPolytope>) return s.normals.empty() ? 0 : s.normals[0].size();
        if constexpr (std::is_same_v<T, VPolytope>) return s.vertices.empty() ? 0 : s.vertices[0].size();
      },
      shape);
}

// Solves the small dense system m·x = rhs by partial pivoting; returns false
// if singular.
bool solve_dense(std::vector<std::vector<double>> m, std::vector<double> rhs, std::vector<double>& x) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
    }
    if (std::fabs(m[p][c]) < 1e-300) return false;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m[i][k] * x[k];
    x[i] = s / m[i][i];
  }
  return true;
}

std::size_t affine_rank(const std::vector<Point>& pts) {
  if (pts.size() <= 1) return 0;
  const std::size_t d = pts[0].size();
  std::vector<Point> rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Point r(d);
    for (std::size_t k = 0; k < d; ++k) r[k] = pts[i][k] - pts[0][k];
    rows.push_back(std::move(r));
  }
  std::size_t rk = 0;
  for (std::size_t c = 0; c < d && rk < rows.size(); ++c) {
    std::size_t p = rk;
    for (std::size_t r = rk; r < rows.size(); ++r) {
      if (std::fabs(rows[r][c]) > std::fabs(rows[p][c])) p = r;
    }
    if (std::fabs(rows[p][c]) < 1e-12) continue;
    std::swap(rows[p], rows[rk]);
    for (std::size_t r = rk + 1; r < rows.size(); ++r) {
      const double f = rows[r][c] / rows[rk][c];
      for (std::size_t k = c; k < d; ++k) rows[r][k] -= f * rows[rk][k];
    }
    ++rk;
  }
  return rk;
}

HPolytope normalised(const HPolytope& p) {
  HPolytope out;
  for (std::size_t i = 0; i < p.normals.size(); ++i) {
    const double n = norm(p.normals[i]);
    Point a(p.normals[i]);
    for (auto& v : a) v /= n;
    out.normals.push_back(std::move(a));
    out.offsets.push_back(p.offsets[i] / n);
  }
  return out;
}

HPolytope box_facets(const AxisBox& b) {
  HPolytope f;
  const std::size_t d = b.lower.size();
  for (std::size_t i = 0; i < d; ++i) {
    Point up(d, 0.0), down(d, 0.0);
    up[i] = 1.0;
    down[i] = -1.0;
    f.normals.push_back(up);
    f.offsets.push_back(b.upper[i]);
    f.normals.push_back(down);
    f.offsets.push_back(-b.lower[i]);
  }
  return f;
}

HPolytope hull_facets_3d(const std::vector<Point>& pts) {
  HPolytope f;
  const std::size_t n = pts.size();
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, norm(p));
  const double eps = 1e-10 * std::max(1.0, scale);
  auto add = [&](Point a, double b) {
    const double len = norm(a);
    for (auto& v : a) v /= len;
    b /= len;
    for (std::size_t i = 0; i < f.normals.size(); ++i) {
      if (dist(f.normals[i], a) < 1e-9 && std::fabs(f.offsets[i] - b) < 1e-9) return;
    }
    f.normals.push_back(std::move(a));
    f.offsets.push_back(b);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point u{pts[j][0] - pts[i][0], pts[j][1] - pts[i][1], pts[j][2] - pts[i][2]};
        const Point v{pts[k][0] - pts[i][0], pts[k][1] - pts[i][1], pts[k][2] - pts[i][2]};
        Point nrm{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
        const double len = norm(nrm);
        if (len < 1e-14) continue;
        for (auto& c : nrm) c /= len;
        const double b = dot(nrm, pts[i]);
        bool below = true;
        bool above = true;
        for (const auto& p : pts) {
          const double s = dot(nrm, p) - b;
          if (s > eps) below = false;
          if (s < -eps) above = false;
          if (!below && !above) break;
        }
        if (below) add(nrm, b);
        if (above) {
          Point neg(nrm);
          for (auto& c : neg) c = -c;
          add(neg, -b);
        }
      }
    }
  }
  return f;
}

HPolytope polygon_facets(const std::vector<Point>& poly) {
  HPolytope f;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    // Outward normal of a counter-clockwise edge.
    Point nrm{b[1] - a[1], a[0] - b[0]};
    const double len = norm(nrm);
    nrm[0] /= len;
    nrm[1] /= len;
    f.offsets.push_back(dot(nrm, a));
    f.normals.push_back(std::move(nrm));
  }
  return f;
}

std::vector<Point> polygon_from_halfplanes(const HPolytope& p) {
  std::vector<Point> pts;
  const std::size_t m = p.normals.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto& a = p.normals[i];
      const auto& b = p.normals[j];
      const double det = a[0] * b[1] - a[1] * b[0];
      if (std::fabs(det) < 1e-14) continue;
      const Point x{(p.offsets[i] * b[1] - a[1] * p.offsets[j]) / det,
                    (a[0] * p.offsets[j] - p.offsets[i] * b[0]) / det};
      bool feasible = true;
      for (std::size_t k = 0; k < m; ++k) {
        if (dot(p.normals[k], x) > p.offsets[k] + 1e-9) {
          feasible = false;
          break;
        }
      }
      if (feasible) pts.push_back(x);
    }
  }
  return convex_hull_2d(std::move(pts));
}

// Vertices of a bounded H-polytope by brute force over d-subsets of facets.
std::vector<Point> enumerate_vertices(const HPolytope& p, std::size_t d) {
  const std::size_t m = p.normals.size();
  std::vector<Point> out;
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<std::vector<double>> sys;
    std::vector<double> rhs;
    for (const auto i : idx) {
      sys.push_back(p.normals[i]);
      rhs.push_back(p.offsets[i]);
    }
    Point x;
    if (solve_dense(sys, rhs, x)) {
      bool feasible = std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
      for (std::size_t k = 0; feasible && k < m; ++k) feasible = dot(p.normals[k], x) <= p.offsets[k] + 1e-9;
      if (feasible && std::none_of(out.begin(), out.end(), [&](const Point& q) { return dist(q, x) < 1e-9; })) {
        out.push_back(std::move(x));
      }
    }
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == m - d + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

double max_violation(const HPolytope& f, std::span<const double> x, std::size_t* which = nullptr) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.normals.size(); ++i) {
    const double v = dot(f.normals[i], x) - f.offsets[i];
    if (v > worst) {
      worst = v;
      if (which) *which = i;
    }
  }
  return worst;
}

}  // namespace

Projection project_dykstra(const HPolytope& poly, std::span<const double> x, double tol, int max_iter) {
  const HPolytope f = normalised(poly);
  const std::size_t m = f.normals.size();
  const std::size_t d = x.size();
  Point y(x.begin(), x.end());
  std::vector<Point> incr(m, Point(d, 0.0));
  Point z(d), prev(d);
  Projection out;
  for (int it = 1; it <= max_iter; ++it) {
    prev = y;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < d; ++k) z[k] = y[k] + incr[i][k];
      const double v = dot(f.normals[i], z) - f.offsets[i];
      for (std::size_t k = 0; k < d; ++k) {
        y[k] = v > 0 ? z[k] - v * f.normals[i][k] : z[k];
        incr[i][k] = z[k] - y[k];
      }
    }
    out.iterations = it;
    if (dist(y, prev) < tol && max_violation(f, y) < tol) {
      out.point = y;
      out.distance = dist(y, x);
      out.converged = true;
      return out;
    }
  }
  out.point = y;
  out.distance = dist(y, x);
  out.converged = false;
  return out;
}

Projection project_onto_hull(const std::vector<Point>& points, std::span<const double> x) {
  if (points.empty()) throw std::invalid_argument("hull of an empty point set");
  const std::size_t d = x.size();
  const std::size_t n = points.size();
  std::vector<Point> q(n, Point(d));
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) q[i][k] = points[i][k] - x[k];
    scale = std::max(scale, dot(q[i], q[i]));
  }
  const double eps = 1e-12 * std::max(scale, 1e-30);

  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (dot(q[i], q[i]) < dot(q[start], q[start])) start = i;
  }
  std::vector<std::size_t> active{start};
  std::vector<double> w{1.0};
  Point y = q[start];

  auto combine = [&](const std::vector<double>& coef) {
    Point r(d, 0.0);
    for (std::size_t s = 0; s < active.size(); ++s) {
      for (std::size_t k = 0; k < d; ++k) r[k] += coef[s] * q[active[s]][k];
    }
    return r;
  };

  Projection out;
  for (int major = 0; major < 1000; ++major) {
    out.iterations = major + 1;
    std::size_t j = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double v = dot(y, q[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (dot(y, y) - best <= eps) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    w.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      // Minimum-norm point of the affine hull of the active set.
      const std::size_t k = active.size();
      std::vector<std::vector<double>> sys(k + 1, std::vector<double>(k + 1, 0.0));
      std::vector<double> rhs(k + 1, 0.0);
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) sys[a][b] = dot(q[active[a]], q[active[b]]);
        sys[a][a] += 1e-14 * std::max(scale, 1e-30);
        sys[a][k] = 1.0;
        sys[k][a] = 1.0;
      }
      rhs[k] = 1.0;
      std::vector<double> sol;
      if (!solve_dense(sys, rhs, sol)) {
        active.pop_back();
        w.pop_back();
        break;
      }
      std::vector<double> v(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(k));
      if (std::all_of(v.begin(), v.end(), [](double c) { return c > 1e-14; })) {
        w = v;
        break;
      }
      double theta = 1.0;
      for (std::size_t s = 0; s < k; ++s) {
        if (v[s] <= 1e-14) theta = std::min(theta, w[s] / (w[s] - v[s]));
      }
      for (std::size_t s = 0; s < k; ++s) w[s] = theta * v[s] + (1.0 - theta) * w[s];
      std::vector<std::size_t> keep_idx;
      std::vector<double> keep_w;
      for (std::size_t s = 0; s < k; ++s) {
        if (w[s] > 1e-14) {
          keep_idx.push_back(active[s]);
          keep_w.push_back(w[s]);
        }
      }
      if (keep_idx.empty()) {
        keep_idx.push_back(active.back());
        keep_w.push_back(1.0);
      }
      const double total = std::accumulate(keep_w.begin(), keep_w.end(), 0.0);
      for (auto& c : keep_w) c /= total;
      active = std::move(keep_idx);
      w = std::move(keep_w);
    }
    y = combine(w);
  }
  out.point.resize(d);
  for (std::size_t k = 0; k < d; ++k) out.point[k] = x[k] + y[k];
  out.distance = norm(y);
  out.converged = true;
  return out;
}

std::vector<Point> convex_hull_2d(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Point& a, const Point& b) { return dist(a, b) < 1e-12; }),
               points.end());
  if (points.size() < 3) return points;
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Point> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 1e-15) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], points[i]) <= 1e-15) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

ConvexBody::ConvexBody(Shape shape) : shape_(std::move(shape)) {
  dim_ = shape_dim(shape_);
  require(dim_ > 0, "convex body needs dimension >= 1");
  prepare();
}

ConvexBody ConvexBody::unit_cube(std::size_t dim) {
  return ConvexBody(AxisBox{Point(dim, 0.0), Point(dim, 1.0)});
}

std::string_view ConvexBody::kind() const {
  switch (shape_.index()) {
    case 0: return "ball";
    case 1: return "box";
    case 2: return "hpolytope";
    default: return "vpolytope";
  }
}

void ConvexBody::prepare() {
  const std::size_t d = dim_;
  auto check_in_cube = [&](const AxisBox& b) {
    for (std::size_t k = 0; k < d; ++k) {
      require(b.lower[k] >= -kContainTol && b.upper[k] <= 1.0 + kContainTol,
              "convex body is not contained in the unit cube");
    }
  };

  if (const auto* ball = std::get_if<Ball>(&shape_)) {
    require(std::isfinite(ball->radius) && ball->radius >= 0, "ball radius must be finite and >= 0");
    bbox_.lower.resize(d);
    bbox_.upper.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      bbox_.lower[k] = ball->center[k] - ball->radius;
      bbox_.upper[k] = ball->center[k] + ball->radius;
    }
    check_in_cube(bbox_);
    full_dimensional_ = ball->radius > 0;
    return;
  }

  if (const auto* box = std::get_if<AxisBox>(&shape_)) {
    require(box->upper.size() == d, "box bounds differ in length");
    for (std::size_t k = 0; k < d; ++k) require(box->lower[k] <= box->upper[k], "box has lower > upper");
    bbox_ = *box;
    check_in_cube(bbox_);
    facets_ = box_facets(*box);
    full_dimensional_ = true;
    for (std::size_t k = 0; k < d; ++k) full_dimensional_ = full_dimensional_ && box->upper[k] > box->lower[k];
    if (d == 2) {
      polygon_ = {{box->lower[0], box->lower[1]},
                  {box->upper[0], box->lower[1]},
                  {box->upper[0], box->upper[1]},
                  {box->lower[0], box->upper[1]}};
    }
    return;
  }

  if (const auto* hp = std::get_if<HPolytope>(&shape_)) {
    require(!hp->normals.empty(), "H-polytope needs at least one half-space");
    require(hp->normals.size() == hp->offsets.size(), "H-polytope normals and offsets differ in length");
    for (const auto& a : hp->normals) {
      require(a.size() == d, "H-polytope normal has wrong dimension");
      require(norm(a) > 0, "H-polytope normals must be nonzero");
    }
    facets_ = normalised(*hp);
    bbox_.lower.resize(d);
    bbox_.upper.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      Point c(d, 0.0);
      c[k] = 1.0;
      const auto hi = lp::maximize_free(facets_->normals, facets_->offsets, c);
      require(hi.status != lp::Status::infeasible, "H-polytope is empty");
      require(hi.status == lp::Status::optimal, "convex body is not contained in the unit cube");
      c[k] = -1.0;
      const auto lo = lp::maximize_free(facets_->normals, facets_->offsets, c);
      require(lo.status == lp::Status::optimal, "convex body is not contained in the unit cube");
      bbox_.upper[k] = hi.value;
      bbox_.lower[k] = -lo.value;
    }
    check_in_cube(bbox_);
    full_dimensional_ = inradius(*this) > 1e-12;
    if (d == 2) polygon_ = polygon_from_halfplanes(*facets_);
    if (d <= 4 && facets_->normals.size() <= 40) hull_vertices_ = enumerate_vertices(*facets_, d);
    return;
  }

  const auto& vp = std::get<VPolytope>(shape_);
  require(!vp.vertices.empty(), "V-polytope needs at least one vertex");
  bbox_.lower.assign(d, std::numeric_limits<double>::infinity());
  bbox_.upper.assign(d, -std::numeric_limits<double>::infinity());
  for (const auto& v : vp.vertices) {
    require(v.size() == d, "V-polytope vertex has wrong dimension");
    for (std::size_t k = 0; k < d; ++k) {
      bbox_.lower[k] = std::min(bbox_.lower[k], v[k]);
      bbox_.upper[k] = std::max(bbox_.upper[k], v[k]);
    }
  }
  check_in_cube(bbox_);
  full_dimensional_ = affine_rank(vp.vertices) == d;
  hull_vertices_ = vp.vertices;
  if (!full_dimensional_) return;
  if (d == 1) {
    facets_ = box_facets(bbox_);
  } else if (d == 2) {
    polygon_ = convex_hull_2d(vp.vertices);
    hull_vertices_ = polygon_;
    facets_ = polygon_facets(polygon_);
  } else if (d == 3) {
    facets_ = hull_facets_3d(vp.vertices);
    std::vector<Point> extreme;
    for (const auto& v : vp.vertices) {
      if (max_violation(*facets_, v) > -1e-9 &&
          std::none_of(extreme.begin(), extreme.end(), [&](const Point& q) { return dist(q, v) < 1e-12; })) {
        extreme.push_back(v);
      }
    }
    hull_vertices_ = std::move(extreme);
  }
}

bool ConvexBody::contains(std::span<const double> x, double tol) const {
  if (const auto* ball = std::get_if<Ball>(&shape_)) return dist(x, ball->center) <= ball->radius + tol;
  if (facets_) return max_violation(*facets_, x) <= tol;
  return project_onto_hull(hull_vertices_, x).distance <= std::max(tol, 1e-12);
}

std::optional<double> ConvexBody::distance_impl(std::span<const double> x, bool& converged) const {
  converged = true;
  if (const auto* ball = std::get_if<Ball>(&shape_)) return std::max(dist(x, ball->center) - ball->radius, 0.0);
  if (const auto* box = std::get_if<AxisBox>(&shape_)) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double e = std::max({box->lower[k] - x[k], 0.0, x[k] - box->upper[k]});
      s += e * e;
    }
    return std::sqrt(s);
  }
  if (facets_) {
    std::size_t which = 0;
    const double v = max_violation(*facets_, x, &which);
    if (v <= 0) return 0.0;
    // Projection onto the most violated supporting half-space; exact if it
    // lands in the body.
    Point y(x.begin(), x.end());
    for (std::size_t k = 0; k < dim_; ++k) y[k] -= v * facets_->normals[which][k];
    if (max_violation(*facets_, y) <= 1e-12) return v;
    if (!hull_vertices_.empty()) return project_onto_hull(hull_vertices_, x).distance;
    const Projection p = project_dykstra(*facets_, x);
    converged = p.converged;
    if (!p.converged) return std::nullopt;
    return p.distance;
  }
  return project_onto_hull(hull_vertices_, x).distance;
}

double ConvexBody::dist_to_body(std::span<const double> x) const {
  require(x.size() == dim_, "point has wrong dimension");
  bool converged = true;
  const auto d = distance_impl(x, converged);
  if (!d) throw ProjectionError("projection onto polytope did not converge");
  return *d;
}

std::optional<bool> ConvexBody::within_distance(std::span<const double> x, double rho) const {
  if (facets_ && !std::holds_alternative<AxisBox>(shape_)) {
    const double v = max_violation(*facets_, x);
    if (v <= 0) return true;
    if (v > rho) return false;
  }
  bool converged = true;
  const auto d = distance_impl(x, converged);
  if (!d) return std::nullopt;
  return *d <= rho;
}

double ConvexBody::dist_to_complement(std::span<const double> x) const {
  require(x.size() == dim_, "point has wrong dimension");
  if (!full_dimensional_) return 0.0;
  if (const auto* ball = std::get_if<Ball>(&shape_)) return std::max(ball->radius - dist(x, ball->center), 0.0);
  if (!facets_) throw std::invalid_argument("inner distance needs a facet description (d <= 3 for V-polytopes)");
  return std::max(-max_violation(*facets_, x), 0.0);
}

std::optional<double> ConvexBody::exact_volume() const {
  if (const auto* ball = std::get_if<Ball>(&shape_)) return kappa(dim_) * std::pow(ball->radius, static_cast<double>(dim_));
  if (const auto* box = std::get_if<AxisBox>(&shape_)) {
    double v = 1.0;
    for (std::size_t k = 0; k < dim_; ++k) v *= box->upper[k] - box->lower[k];
    return v;
  }
  if (!full_dimensional_) return 0.0;
  if (dim_ == 1) return bbox_.upper[0] - bbox_.lower[0];
  if (dim_ == 2 && polygon_.size() >= 3) {
    double a = 0.0;
    for (std::size_t i = 0; i < polygon_.size(); ++i) {
      const auto& p = polygon_[i];
      const auto& q = polygon_[(i + 1) % polygon_.size()];
      a += p[0] * q[1] - q[0] * p[1];
    }
    return std::fabs(a) / 2.0;
  }
  return std::nullopt;
}

double inradius(const ConvexBody& k) {
  if (const auto* ball = std::get_if<Ball>(&k.shape())) return ball->radius;
  if (const auto* box = std::get_if<AxisBox>(&k.shape())) {
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k.dim(); ++i) r = std::min(r, (box->upper[i] - box->lower[i]) / 2.0);
    return r;
  }
  if (std::holds_alternative<VPolytope>(k.shape()) && !k.full_dimensional()) return 0.0;
  const HPolytope* f = k.facets();
  if (!f) throw std::invalid_argument("inradius of this V-polytope needs a facet description");
  // maximize r subject to a_i·x + r <= b_i (unit normals), r >= 0.
  const std::size_t d = k.dim();
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < f->normals.size(); ++i) {
    Point row(f->normals[i]);
    row.push_back(1.0);
    a.push_back(std::move(row));
    b.push_back(f->offsets[i]);
  }
  Point neg(d + 1, 0.0);
  neg[d] = -1.0;
  a.push_back(neg);
  b.push_back(0.0);
  Point c(d + 1, 0.0);
  c[d] = 1.0;
  const auto res = lp::maximize_free(a, b, c);
  if (res.status == lp::Status::infeasible) throw std::invalid_argument("empty body has no inradius");
  if (res.status != lp::Status::optimal) throw std::invalid_argument("unbounded body");
  return std::max(res.value, 0.0);
}

std::optional<double> surface_area(const ConvexBody& k) {
  const std::size_t d = k.dim();
  if (const auto* ball = std::get_if<Ball>(&k.shape())) {
    return static_cast<double>(d) * kappa(d) * std::pow(ball->radius, static_cast<double>(d) - 1.0);
  }
  if (const auto* box = std::get_if<AxisBox>(&k.shape())) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      double face = 2.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != i) face *= box->upper[j] - box->lower[j];
      }
      s += face;
    }
    return s;
  }
  if (d == 2 && k.polygon().size() >= 2) {
    const auto& p = k.polygon();
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += dist(p[i], p[(i + 1) % p.size()]);
    return s;
  }
  return std::nullopt;
}

ConvexBody random_body(std::size_t dim, BodyFamily family, std::uint64_t seed, std::uint64_t index) {
  RandomStream rng(seed, index);
  auto inscribed = [&](double rmin, double rmax, Point& c) {
    const double r = rng.uniform(rmin, rmax);
    c.resize(dim);
    for (auto& v : c) v = rng.uniform(r, 1.0 - r);
    return r;
  };
  switch (family) {
    case BodyFamily::ball: {
      Point c;
      const double r = inscribed(0.05, 0.45, c);
      return ConvexBody(Ball{c, r});
    }
    case BodyFamily::box: {
      AxisBox b{Point(dim), Point(dim)};
      for (std::size_t k = 0; k < dim; ++k) {
        const double len = rng.uniform(0.05, 1.0);
        b.lower[k] = rng.uniform(0.0, 1.0 - len);
        b.upper[k] = b.lower[k] + len;
      }
      return ConvexBody(b);
    }
    case BodyFamily::hpolytope: {
      Point c;
      const double r = inscribed(0.1, 0.4, c);
      HPolytope p = box_facets(AxisBox{Point(dim, 0.0), Point(dim, 1.0)});
      for (std::size_t i = 0; i < 2 * dim + 4; ++i) {
        Point u(dim);
        for (auto& v : u) v = rng.normal();
        const double len = norm(u);
        for (auto& v : u) v /= len;
        p.offsets.push_back(dot(u, c) + r);
        p.normals.push_back(std::move(u));
      }
      return ConvexBody(p);
    }
    case BodyFamily::hull: {
      if (dim < 2 || dim > 3) throw std::invalid_argument("random hulls are generated for d = 2, 3 only");
      const auto count = static_cast<std::size_t>(rng.integer(static_cast<std::int64_t>(dim) + 1, 32));
      Point lo(dim), hi(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        const double len = rng.uniform(0.2, 1.0);
        lo[k] = rng.uniform(0.0, 1.0 - len);
        hi[k] = lo[k] + len;
      }
      VPolytope v;
      for (std::size_t i = 0; i < count; ++i) {
        Point p(dim);
        for (std::size_t k = 0; k < dim; ++k) p[k] = rng.uniform(lo[k], hi[k]);
        v.vertices.push_back(std::move(p));
      }
      return ConvexBody(v);
    }
  }
  throw std::invalid_argument("unknown body family");
}

std::vector<ConvexBody> random_body_corpus(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::vector<BodyFamily> families{BodyFamily::ball, BodyFamily::box, BodyFamily::hpolytope};
  if (dim == 2 || dim == 3) families.push_back(BodyFamily::hull);
  std::vector<ConvexBody> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_body(dim, families[i % families.size()], seed ^ (0x51ED27ULL * dim), i));
  }
  return out;
}

}  // namespace isolat
