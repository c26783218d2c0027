#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "isolat/distance.hpp"
#include "isolat/lattice_io.hpp"
#include "isolat/reduction.hpp"
#include "oracles.hpp"

using namespace isolat;

TEST(Nearest, Basics) {
  const NearestIndex origin(std::vector<double>{0.0}, 1);
  EXPECT_DOUBLE_EQ(dist_to_pointset(std::vector<double>{0.7}, origin), 0.7);
  const NearestIndex eq(enumerate_points(scaled_integer_lattice(4, 1)));
  EXPECT_NEAR(dist_to_pointset(std::vector<double>{0.99}, eq), 0.24, 1e-15);
  EXPECT_EQ(dist_to_pointset(std::vector<double>{0.5}, eq), 0.0);
}

TEST(Nearest, GridMatchesBruteForce) {
  for (const auto& ref : {"fib:16", "rank1:1024:1,301,77", "rank1:4096:1,15,1203,77", "rank1:64:1,0"}) {
    const auto pts = enumerate_points(resolve_lattice(ref));
    const auto flat = pts.to_double();
    const NearestIndex index(pts);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 500; ++i) {
      std::vector<double> x(pts.dim);
      for (auto& v : x) v = u(rng);
      EXPECT_EQ(index.distance(x), oracle::brute_nearest(flat, pts.dim, x)) << ref;
    }
  }
}

TEST(CoveringRadius, ClosedForms) {
  const auto eq = covering_radius(NearestIndex(enumerate_points(scaled_integer_lattice(4, 1))));
  EXPECT_LE(eq.lb, 0.25);
  EXPECT_GE(eq.ub, 0.25);
  EXPECT_LE(eq.ub - eq.lb, 1e-4);
  const auto z2 = covering_radius(NearestIndex(enumerate_points(integer_lattice(2))));
  EXPECT_NEAR(z2.lb, std::sqrt(2.0), 1e-12);
  EXPECT_GE(z2.ub, std::sqrt(2.0));
}

TEST(CoveringRadius, Rank1FiveAgainstDenseGrid) {
  const auto pts = enumerate_points(resolve_lattice("rank1:5:1,2"));
  const auto flat = pts.to_double();
  const int n = 2001;
  double grid = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      grid = std::max(grid, oracle::brute_nearest(flat, 2, {i / (n - 1.0), j / (n - 1.0)}));
    }
  }
  const auto cr = covering_radius(NearestIndex(pts), 1e-4);
  EXPECT_LE(cr.ub - cr.lb, 1e-4);
  EXPECT_LE(grid, cr.ub + 1e-15);
  EXPECT_GE(grid + std::sqrt(2.0) / (2 * (n - 1)), cr.lb);
}

TEST(Norms, OneDimensionalClosedForm) {
  for (const std::int64_t n : {1, 2, 4, 7, 64}) {
    const NearestIndex eq(enumerate_points(scaled_integer_lattice(n, 1)));
    const double nn = static_cast<double>(n);
    EXPECT_NEAR(distance_norm(eq, 1.0).value, (nn + 1) / (4 * nn * nn), 1e-12);
  }
  EXPECT_NEAR(distance_norm(NearestIndex(enumerate_points(scaled_integer_lattice(4, 1))), 1.0).value, 0.078125,
              1e-15);
  EXPECT_NEAR(distance_norm(NearestIndex(std::vector<double>{0.0}, 1), 1.0).value, 0.5, 1e-15);
}

TEST(Norms, Monotone) {
  for (const auto& ref : {"fib:9", "rank1:64:1,3,9", "Z:2"}) {
    const auto lat = resolve_lattice(ref);
    const NearestIndex index(enumerate_points(lat));
    NormConfig cfg;
    cfg.resolution = lat.dim == 2 ? 401 : 61;
    const auto r = distance_norms(index, {0.5, 1.0, 2.0, kInfinity}, cfg);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) EXPECT_LE(r[i].lower_certified, r[i + 1].upper_certified) << ref;
    for (const auto& x : r) {
      EXPECT_LE(x.lower_certified, x.value);
      EXPECT_LE(x.value, x.upper_certified);
    }
  }
}

TEST(SlabUnion, Examples) {
  const std::vector<std::int64_t> one{1};
  const auto z = slab_union_volume(integer_lattice(1), one, Rational(1, 4));
  EXPECT_EQ(z.union_volume, Rational(1, 2));
  EXPECT_EQ(z.complement_volume, Rational(1, 2));
  // rank1(5,(1,2)), h=(2,−1): midpoint grid oracle for |2x−y − k| < t.
  const auto lat = resolve_lattice("rank1:5:1,2");
  const std::vector<std::int64_t> h{2, -1};
  const double t = 0.1;
  const auto s = slab_union_volume(lat, h, Rational(1, 10));
  const int n = 2000;
  long long hit = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = 2 * (i + 0.5) / n - (j + 0.5) / n;
      hit += std::fabs(v - std::round(v)) < t;
    }
  }
  EXPECT_NEAR(to_double(s.union_volume), static_cast<double>(hit) / (1.0 * n * n), 2e-3);
  const double sigma = spectral_test(lat).sigma;
  EXPECT_LE(to_double(s.union_volume), (2 * std::sqrt(2.0) + 4 * sigma) * std::sqrt(2.0) * t);
}

TEST(Prop1, OneDimensional) {
  const auto r = verify_prop1(scaled_integer_lattice(4, 1), {0.5, 1.0, 2.0, kInfinity});
  EXPECT_NEAR(r.t_d, 1.0 / 12, 1e-15);
  EXPECT_EQ(r.t_certified, Rational(1, 12));
  EXPECT_GE(r.volume_a, Rational(1, 2));
  for (const auto& row : r.rows) {
    if (row.gamma == 1.0) {
      EXPECT_NEAR(row.lhs, 1.0 / 96, 1e-15);
      EXPECT_NEAR(row.norm, 5.0 / 64, 1e-15);
    }
    EXPECT_EQ(row.verdict, Verdict::pass);
  }
  EXPECT_NEAR(r.upper_ratio, 1.0, 1e-4);
  for (const std::int64_t n : {3, 16}) {
    const auto q = verify_prop1(scaled_integer_lattice(n, 1), {kInfinity});
    EXPECT_NEAR(q.sigma, 1.0 / static_cast<double>(n), 1e-15);
    EXPECT_NEAR(q.rows[0].norm, q.sigma, 1e-4);
  }
}

TEST(Proxy, ExponentsAndGamma) {
  const auto a = proxy_spec(2, Rational(1, 2), Rational(0), 2);
  EXPECT_FALSE(a.gamma);
  EXPECT_EQ(a.exponent, 1);
  const auto b = proxy_spec(3, Rational(0), Rational(1), 2);
  EXPECT_EQ(*b.gamma, 3);
  EXPECT_EQ(b.exponent, 3);
  const auto c = proxy_spec(2, Rational(1, 2), Rational(1), 3);
  EXPECT_EQ(*c.gamma, 4);
  EXPECT_EQ(c.exponent, 2);
  EXPECT_THROW(proxy_spec(1, Rational(1), Rational(1), 2), std::invalid_argument);
}

TEST(Proxy, NearestNeighbourBaseline) {
  const NearestIndex eq(enumerate_points(scaled_integer_lattice(8, 1)));
  const TestFunction constant = [](std::span<const double>) { return 3.0; };
  EXPECT_EQ(nn_baseline_error(eq, constant, kInfinity), 0.0);
  const TestFunction ident = [](std::span<const double> x) { return x[0]; };
  EXPECT_NEAR(nn_baseline_error(eq, ident, kInfinity, 800), 1.0 / 8, 1e-12);
  const auto pts = enumerate_points(fibonacci_lattice(8));
  const NearestIndex f(pts);
  const TestFunction lip = [](std::span<const double> x) { return std::hypot(x[0] - 0.3, x[1] - 0.6); };
  EXPECT_LE(nn_baseline_error(f, lip, kInfinity, 200), covering_radius(f).ub + 1e-12);
}

TEST(Prop1, UpperRatioPositiveAndFinite) {
  for (const auto& ref : {"fib:8", "fib:13", "rank1:64:1,19", "rank1:256:1,9,81"}) {
    const auto r = verify_prop1(resolve_lattice(ref), {1.0, kInfinity});
    EXPECT_GT(r.upper_ratio, 0.0) << ref;
    EXPECT_TRUE(std::isfinite(r.upper_ratio)) << ref;
    EXPECT_GE(r.volume_a, Rational(1, 2)) << ref;
    EXPECT_LE(r.volume_b, r.volume_b_bound) << ref;
  }
}
