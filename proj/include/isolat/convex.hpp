#pragma once

// Closed convex bodies inside [0,1]^d with membership, distances and
// projections.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

namespace isolat {

using Point = std::vector<double>;

struct Ball {
  Point center;
  double radius = 0.0;
};

struct AxisBox {
  Point lower;
  Point upper;
};

/// {x : normals[i]·x <= offsets[i] for all i}
struct HPolytope {
  std::vector<Point> normals;
  std::vector<double> offsets;
};

/// Convex hull of the vertices. One or two vertices give a point or a segment.
struct VPolytope {
  std::vector<Point> vertices;
};

class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Projection {
  Point point;
  double distance = 0.0;
  bool converged = true;
  int iterations = 0;
};

inline constexpr double kProjectionTol = 1e-10;
inline constexpr int kProjectionMaxIter = 10000;

/// Dykstra's cyclic projections onto an intersection of half-spaces.
Projection project_dykstra(const HPolytope& poly, std::span<const double> x, double tol = kProjectionTol,
                           int max_iter = kProjectionMaxIter);

/// Wolfe's minimum-norm-point algorithm on conv(points).
Projection project_onto_hull(const std::vector<Point>& points, std::span<const double> x);

/// Counter-clockwise hull of planar points (collinear points dropped).
std::vector<Point> convex_hull_2d(std::vector<Point> points);

class ConvexBody {
 public:
  using Shape = std::variant<Ball, AxisBox, HPolytope, VPolytope>;

  /// Validates the invariants: nonempty, nondegenerate description, and
  /// contained in [0,1]^d up to 1e-9. Throws std::invalid_argument.
  explicit ConvexBody(Shape shape);

  static ConvexBody unit_cube(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Shape& shape() const { return shape_; }
  std::string_view kind() const;

  bool contains(std::span<const double> x, double tol = 0.0) const;

  /// 0 inside; Euclidean distance to the body outside.
  double dist_to_body(std::span<const double> x) const;

  /// Distance to the complement for points inside, 0 outside.
  double dist_to_complement(std::span<const double> x) const;

  /// dist_to_body(x) <= rho, skipping the projection when a single
  /// supporting half-space already decides. Returns nullopt if the projection
  /// fails to converge.
  std::optional<bool> within_distance(std::span<const double> x, double rho) const;

  const AxisBox& bounding_box() const { return bbox_; }

  /// Unit-normal facet description, when the body has one (boxes, full
  /// dimensional polytopes in d <= 3, every H-polytope).
  const HPolytope* facets() const { return facets_ ? &*facets_ : nullptr; }

  bool full_dimensional() const { return full_dimensional_; }

  /// Counter-clockwise vertices for two-dimensional polytopes and boxes.
  const std::vector<Point>& polygon() const { return polygon_; }

  /// Closed-form volume where available (balls, boxes, planar polytopes,
  /// lower-dimensional bodies, intervals).
  std::optional<double> exact_volume() const;

 private:
  void prepare();
  std::optional<double> distance_impl(std::span<const double> x, bool& converged) const;

  Shape shape_;
  std::size_t dim_ = 0;
  AxisBox bbox_;
  std::optional<HPolytope> facets_;
  bool full_dimensional_ = true;
  std::vector<Point> polygon_;
  std::vector<Point> hull_vertices_;
};

inline double dist_to_body(std::span<const double> x, const ConvexBody& k) { return k.dist_to_body(x); }
inline double dist_to_complement(std::span<const double> x, const ConvexBody& k) {
  return k.dist_to_complement(x);
}

/// Radius of the largest ball contained in the body (Chebyshev centre LP for
/// polytopes).
double inradius(const ConvexBody& k);

/// Surface measure for planar bodies (perimeter) and balls/boxes in any d.
std::optional<double> surface_area(const ConvexBody& k);

enum class BodyFamily { ball, box, hpolytope, hull };

/// Random bodies inside [0,1]^d: balls, axis boxes, H-polytopes cut by
/// tangent half-spaces of an inscribed ball (clipped to the cube), and hulls
/// of up to 32 random points (d = 2, 3).
ConvexBody random_body(std::size_t dim, BodyFamily family, std::uint64_t seed, std::uint64_t index);

/// `count` bodies cycling through the families available in dimension `dim`.
std::vector<ConvexBody> random_body_corpus(std::size_t dim, std::size_t count, std::uint64_t seed);

}  // namespace isolat
