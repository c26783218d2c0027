#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "isolat/discrepancy.hpp"
#include "isolat/lattice_io.hpp"
#include "isolat/reduction.hpp"

using namespace isolat;

namespace {

// Midpoint-grid estimate of Vol({a·x <= b} ∩ [0,1]^d), d = 2 or 3.
double grid_halfspace(const std::vector<double>& a, double b, int n) {
  const std::size_t d = a.size();
  long long hit = 0, total = 0;
  std::vector<int> idx(d, 0);
  while (true) {
    double s = 0;
    for (std::size_t k = 0; k < d; ++k) s += a[k] * (idx[k] + 0.5) / n;
    hit += s <= b;
    ++total;
    std::size_t k = 0;
    while (k < d && idx[k] == n - 1) idx[k++] = 0;
    if (k == d) break;
    ++idx[k];
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

}  // namespace

TEST(HalfspaceVolume, KnownValues) {
  EXPECT_EQ(halfspace_cube_volume(RationalVector{1, 1}, Rational(1)), Rational(1, 2));
  EXPECT_EQ(halfspace_cube_volume(RationalVector{1, 2}, Rational(1)), Rational(1, 4));
  for (const auto& t : {Rational(-1, 3), Rational(0), Rational(2, 7), Rational(1), Rational(5, 2)}) {
    const Rational clipped = t < 0 ? Rational(0) : (t > 1 ? Rational(1) : t);
    EXPECT_EQ(halfspace_cube_volume(RationalVector{1, 0, 0}, t), clipped);
  }
  EXPECT_EQ(halfspace_cube_volume(RationalVector{-1, 1}, Rational(0)), Rational(1, 2));
}

TEST(HalfspaceVolume, AgainstGridOracle) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = 2 + i % 2;
    std::vector<double> a(d);
    for (auto& v : a) v = g(rng);
    const double b = u(rng);
    const int n = d == 2 ? 1000 : 120;
    EXPECT_NEAR(halfspace_cube_volume(a, b), grid_halfspace(a, b, n), d == 2 ? 4e-3 : 3e-2);
    RationalVector ar;
    for (const auto v : a) ar.push_back(exact_rational(v));
    EXPECT_NEAR(to_double(halfspace_cube_volume(ar, exact_rational(b))), halfspace_cube_volume(a, b), 1e-12);
  }
}

TEST(HalfspaceVolume, SectionIsDerivative) {
  // Diagonal of the unit square: length √2.
  EXPECT_NEAR(hyperplane_section_volume(RationalVector{1, 1}, Rational(1)).value(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(hyperplane_section_volume(RationalVector{1, 0, 0}, Rational(1, 2)).value(), 1.0, 1e-15);
  // Hexagonal middle section of the 3-cube: area (3√3/4)·(√2/2)²·2 = 3√3/4.
  EXPECT_NEAR(hyperplane_section_volume(RationalVector{1, 1, 1}, Rational(3, 2)).value(), 3 * std::sqrt(3.0) / 4,
              1e-14);
}

TEST(Counting, Rank1Five) {
  const auto pts = enumerate_points(resolve_lattice("rank1:5:1,2"));
  EXPECT_EQ(count_points(pts, ConvexBody(AxisBox{{0, 0}, {0.5, 1}})), 3);
  EXPECT_EQ(count_points(pts, ConvexBody(HPolytope{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {0.5, 0, 1, 0}})), 3);
  EXPECT_EQ(count_points(pts, ConvexBody::unit_cube(2)), 5);
  const std::vector<std::int64_t> h{2, -1};
  EXPECT_EQ(count_in_slab(pts, h, Rational(0), Rational(1), true), 0);
  EXPECT_EQ(count_in_slab(pts, h, Rational(0), Rational(1), false), 5);
  // Boundary points count for closed bodies.
  EXPECT_EQ(count_points(pts, ConvexBody(Ball{{0.4, 0.5}, 0.1})), 0);
  // Dyadic data: four points of (1/4)Z² lie exactly on the circle.
  const auto quarter = enumerate_points(scaled_integer_lattice(4, 2));
  EXPECT_EQ(count_points(quarter, ConvexBody(Ball{{0.5, 0.5}, 0.25})), 5);
  EXPECT_EQ(count_points(quarter, ConvexBody(AxisBox{{0.25, 0.25}, {0.5, 0.75}})), 6);
}

TEST(Witness, Rank1FiveSlab) {
  const auto w = slab_witness(enumerate_points(resolve_lattice("rank1:5:1,2")));
  EXPECT_TRUE(w.certified);
  EXPECT_EQ(w.inside_count, 0);
  EXPECT_NEAR(w.local_value, 0.5, 1e-8);
  EXPECT_LE(w.local_value, 0.5);
  EXPECT_EQ(w.local_value, to_double(w.exact_volume));
}

TEST(Witness, OneDimensional) {
  const auto z = slab_witness(enumerate_points(integer_lattice(1)));
  EXPECT_NEAR(z.local_value, 1.0, 1e-8);
  for (const std::int64_t n : {2, 5, 16}) {
    const auto pts = enumerate_points(scaled_integer_lattice(n, 1));
    const double eps = 1e-9;
    const auto w = slab_witness(pts);
    EXPECT_NEAR(w.local_value, 1.0 / static_cast<double>(n), 2 * eps);
    const auto best = isotropic_lower_bound(pts).best;
    EXPECT_NEAR(best.local_value, 1.0 / static_cast<double>(n), 2 * eps);
  }
}

TEST(Witness, SinglePointInSquare) {
  const auto r = isotropic_lower_bound(enumerate_points(integer_lattice(2)));
  EXPECT_GE(r.best.local_value, 0.9);
  EXPECT_LE(r.best.local_value, 1.0);
  EXPECT_TRUE(r.best.certified);
}

TEST(Witness, BudgetMonotone) {
  const auto pts = enumerate_points(fibonacci_lattice(12));
  SearchConfig small;
  small.budget = 8;
  SearchConfig big = small;
  big.budget = 64;
  EXPECT_LE(isotropic_lower_bound(pts, small).best.local_value, isotropic_lower_bound(pts, big).best.local_value);
  for (const auto& w : isotropic_lower_bound(pts, big).witnesses) {
    EXPECT_LE(w.local_value, 1.0);
    if (!w.certified) continue;
    EXPECT_EQ(w.inside_count, count_points(pts, w.body));
    const auto& bb = w.body.bounding_box();
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_GE(bb.lower[k], 0.0);
      EXPECT_LE(bb.upper[k], 1.0);
    }
  }
}

TEST(Thm1, Examples) {
  const auto r = verify_thm1(resolve_lattice("rank1:5:1,2"));
  EXPECT_NEAR(r.bound, 2 * 64 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(r.bound, 57.24, 5e-3);
  EXPECT_NEAR(r.j_lower, 0.5, 1e-8);
  EXPECT_EQ(r.verdict, Verdict::pass);
  for (const std::size_t d : {1, 2, 3}) {
    const auto z = verify_thm1(integer_lattice(d));
    EXPECT_EQ(z.sigma, 1.0);
    EXPECT_GE(z.bound, 1.0);
    EXPECT_EQ(z.verdict, Verdict::pass);
  }
  const auto f = verify_thm1(fibonacci_lattice(15));
  EXPECT_GT(f.slab_value, 0.0);
  EXPECT_GE(f.j_lower, f.slab_value);
  EXPECT_LE(f.j_lower, f.bound);
  EXPECT_GE(f.slab_value, 0.2 * f.sigma * f.slab_section);
}
