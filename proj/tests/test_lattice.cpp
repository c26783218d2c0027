#include <gtest/gtest.h>

#include <sstream>

#include "isolat/lattice.hpp"
#include "isolat/lattice_io.hpp"
#include "oracles.hpp"

using namespace isolat;

namespace {

std::vector<std::vector<Rational>> library_points(const IntegrationLattice& lat) {
  const auto ps = enumerate_points(lat);
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::vector<Rational> p;
    for (std::size_t k = 0; k < ps.dim; ++k) p.push_back(ps.coordinate(i, k));
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Lattice, Rank1TrivialIsIdentity) {
  const std::vector<std::int64_t> g{0, 0};
  const auto lat = rank1_lattice(1, g);
  EXPECT_EQ(lat.n_points, 1);
  EXPECT_EQ(lat, integer_lattice(2));
  EXPECT_TRUE(validate(lat).empty());
}

TEST(Lattice, Rank1FiveHasDeterminantAndContainsZ2) {
  const std::vector<std::int64_t> g{1, 2};
  const auto lat = rank1_lattice(5, g);
  EXPECT_EQ(lat.n_points, 5);
  EXPECT_EQ(abs(determinant(lat.basis)), Rational(1, 5));
  // e_k = c·B must have integer c.
  const auto inv = inverse(lat.basis);
  ASSERT_TRUE(inv);
  for (const auto& row : *inv) {
    for (const auto& v : row) EXPECT_EQ(boost::multiprecision::denominator(v), 1);
  }
  const RationalMatrix expected{{Rational(1, 5), Rational(2, 5)}, {Rational(0), Rational(1)}};
  EXPECT_EQ(lat, make_lattice(expected));
}

TEST(Lattice, FibonacciMatchesRecursion) {
  std::int64_t a = 1, b = 1;
  for (int k = 3; k <= 10; ++k) {
    const std::int64_t c = a + b;
    a = b;
    b = c;
  }
  EXPECT_EQ(b, 55);
  EXPECT_EQ(a, 34);
  const std::vector<std::int64_t> g{1, a};
  EXPECT_EQ(fibonacci_lattice(10), rank1_lattice(b, g));
  EXPECT_EQ(fibonacci_lattice(10).n_points, 55);
}

TEST(Lattice, PointsMatchModularArithmetic) {
  for (const auto& [n, g] : std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>>{
           {5, {1, 2}}, {4, {2, 2}}, {55, {1, 34}}, {64, {1, 7, 19}}, {12, {3, 4}}}) {
    const auto lat = rank1_lattice(n, g);
    const auto expected = oracle::rank1_points(n, g);
    EXPECT_EQ(library_points(lat), expected) << n;
    EXPECT_EQ(static_cast<std::size_t>(lat.n_points), expected.size());
    EXPECT_TRUE(is_closed_under_addition(enumerate_points(lat)));
  }
  const std::vector<std::int64_t> g{2, 2};
  EXPECT_EQ(rank1_lattice(4, g).n_points, 2);
  const auto pts = library_points(integer_lattice(2));
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0], (std::vector<Rational>{0, 0}));
}

TEST(Lattice, DualBasisGeneratesCongruenceLattice) {
  const std::vector<std::int64_t> g{1, 2};
  const auto lat = rank1_lattice(5, g);
  const auto dual = dual_basis(lat);
  // Every h with |h|∞ <= 5 and h1 + 2h2 ≡ 0 mod 5 is an integer combination
  // of the dual basis, and nothing else is.
  RationalMatrix db;
  for (const auto& row : dual.basis) {
    RationalVector r;
    for (const auto& v : row) r.emplace_back(v);
    db.push_back(r);
  }
  const auto inv = inverse(db);
  ASSERT_TRUE(inv);
  for (std::int64_t h1 = -5; h1 <= 5; ++h1) {
    for (std::int64_t h2 = -5; h2 <= 5; ++h2) {
      const bool congruent = ((h1 + 2 * h2) % 5 + 5) % 5 == 0;
      Rational c0 = h1 * (*inv)[0][0] + h2 * (*inv)[1][0];
      Rational c1 = h1 * (*inv)[0][1] + h2 * (*inv)[1][1];
      const bool generated =
          boost::multiprecision::denominator(c0) == 1 && boost::multiprecision::denominator(c1) == 1;
      EXPECT_EQ(congruent, generated) << h1 << "," << h2;
      const std::vector<std::int64_t> h{h1, h2};
      EXPECT_EQ(congruent, in_dual(lat, h));
    }
  }
  EXPECT_EQ(dual_basis(integer_lattice(2)).basis, (IntMatrix{{1, 0}, {0, 1}}));
  const std::vector<std::int64_t> g1{1};
  EXPECT_EQ(dual_basis(rank1_lattice(7, g1)).basis, (IntMatrix{{7}}));
}

TEST(Lattice, ValidateReportsViolations) {
  EXPECT_TRUE(validate(fibonacci_lattice(12)).empty());
  IntegrationLattice wrong_n = make_lattice({{Rational(1, 3)}});
  wrong_n.n_points = 4;
  const auto p = validate(wrong_n);
  ASSERT_FALSE(p.empty());
  EXPECT_EQ(p.front(), "determinant mismatch");
  // Determinant 1, but e1 is not an integer combination of the rows.
  IntegrationLattice missing;
  missing.dim = 2;
  missing.basis = {{Rational(2), Rational(0)}, {Rational(0), Rational(1, 2)}};
  missing.n_points = 1;
  const auto q = validate(missing);
  EXPECT_NE(std::find(q.begin(), q.end(), "Z^d not contained"), q.end());
  EXPECT_THROW(make_lattice(missing.basis), std::invalid_argument);
}

TEST(Lattice, HermiteFormIsBasisInvariant) {
  const RationalMatrix b{{Rational(1, 5), Rational(2, 5)}, {Rational(0), Rational(1)}};
  const RationalMatrix permuted{{Rational(0), Rational(1)}, {Rational(1, 5), Rational(2, 5)}};
  const RationalMatrix mixed{{Rational(1, 5), Rational(7, 5)}, {Rational(1, 5), Rational(2, 5)}};
  EXPECT_EQ(make_lattice(b), make_lattice(permuted));
  EXPECT_EQ(make_lattice(b), make_lattice(mixed));
}

TEST(LatticeIo, SpecRoundTrip) {
  for (const auto& ref : {"fib:9", "rank1:64:1,7,19", "korobov:101:12:3", "scaled:4:2", "Z:3"}) {
    const auto lat = resolve_lattice(ref);
    EXPECT_EQ(parse_lattice_spec(format_lattice_spec(lat)), lat) << ref;
  }
  EXPECT_EQ(parse_lattice_spec("# comment\n2 5\nrank1: 1 2\n"), rank1_lattice(5, std::vector<std::int64_t>{1, 2}));
  EXPECT_THROW(parse_lattice_spec("2 4\n1/5 2/5\n0 1\n"), std::invalid_argument);
  EXPECT_THROW(resolve_lattice("nope:3"), std::exception);
}

TEST(LatticeIo, PointsCsv) {
  std::ostringstream os;
  write_points_csv(os, enumerate_points(resolve_lattice("rank1:5:1,2")), {true, 17});
  EXPECT_EQ(os.str(), "x1,x2\n0,0\n1/5,2/5\n2/5,4/5\n3/5,1/5\n4/5,3/5\n");
}

TEST(Lattice, DualRowsHaveIntegerProductsWithPrimalRows) {
  for (const auto& ref : {"fib:12", "rank1:64:1,7,19", "korobov:101:12:4", "scaled:6:3", "rank1:12:3,4"}) {
    const auto lat = resolve_lattice(ref);
    for (const auto& h : dual_basis(lat).basis) {
      for (const auto& b : lat.basis) {
        Rational s = 0;
        for (std::size_t k = 0; k < lat.dim; ++k) s += Rational(h[k]) * b[k];
        EXPECT_EQ(boost::multiprecision::denominator(s), 1) << ref;
      }
    }
  }
}
