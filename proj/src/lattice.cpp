#include "isolat/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace isolat {

namespace mp = boost::multiprecision;

namespace {

std::string join_ints(std::span<const std::int64_t> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

IntegrationLattice make_lattice(const RationalMatrix& basis, std::string label) {
  if (basis.empty()) throw std::invalid_argument("lattice dimension must be positive");
  const std::size_t d = basis.size();
  for (const auto& row : basis) {
    if (row.size() != d) throw std::invalid_argument("basis must be square");
  }
  const Rational det = determinant(basis);
  if (det == 0) throw std::invalid_argument("basis rows are linearly dependent");
  const Rational inv = 1 / abs(det);
  if (!is_integral(inv)) {
    throw std::invalid_argument("|det(basis)| is not the reciprocal of an integer");
  }
  IntegrationLattice lat;
  lat.dim = d;
  lat.basis = canonical_basis(basis);
  lat.n_points = to_int64(mp::numerator(inv));
  lat.label = std::move(label);
  if (auto problems = validate(lat); !problems.empty()) {
    throw std::invalid_argument("not an integration lattice: " + problems.front());
  }
  return lat;
}

IntegrationLattice rank1_lattice(std::int64_t n, std::span<const std::int64_t> g) {
  if (g.empty()) throw std::invalid_argument("rank-1 lattice needs dimension >= 1");
  if (n <= 0) throw std::invalid_argument("rank-1 modulus n must be positive");
  const std::size_t d = g.size();
  // Generators of n·L: n·e_1, ..., n·e_d and g.
  BigMatrix gens;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Integer> row(d, Integer(0));
    row[i] = n;
    gens.push_back(std::move(row));
  }
  std::vector<Integer> grow;
  for (const auto gi : g) grow.emplace_back(gi);
  gens.push_back(std::move(grow));
  const BigMatrix h = hermite_normal_form(std::move(gens));
  RationalMatrix basis;
  for (const auto& row : h) {
    RationalVector r;
    for (const auto& v : row) r.emplace_back(v, Integer(n));
    basis.push_back(std::move(r));
  }
  return make_lattice(basis, "rank1(" + std::to_string(n) + ";" + join_ints(g) + ")");
}

std::int64_t fibonacci_number(int k) {
  if (k < 1 || k > 90) throw std::invalid_argument("Fibonacci index out of range");
  std::int64_t a = 1, b = 1;
  for (int i = 2; i < k; ++i) {
    const std::int64_t c = a + b;
    a = b;
    b = c;
  }
  return k <= 2 ? 1 : b;
}

IntegrationLattice fibonacci_lattice(int k) {
  if (k < 3) throw std::invalid_argument("Fibonacci lattice needs k >= 3");
  const std::int64_t g[2] = {1, fibonacci_number(k - 1)};
  auto lat = rank1_lattice(fibonacci_number(k), g);
  lat.label = "fib" + std::to_string(k);
  return lat;
}

IntegrationLattice korobov_lattice(std::int64_t n, std::int64_t a, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("Korobov lattice needs dimension >= 1");
  if (n <= 0) throw std::invalid_argument("Korobov modulus must be positive");
  std::vector<std::int64_t> g(dim);
  Integer p = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    g[i] = static_cast<std::int64_t>(p);
    p = (p * a) % n;
    if (p < 0) p += n;
  }
  auto lat = rank1_lattice(n, g);
  lat.label = "korobov(" + std::to_string(n) + ";" + std::to_string(a) + ";" + std::to_string(dim) + ")";
  return lat;
}

IntegrationLattice scaled_integer_lattice(std::int64_t n, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("lattice dimension must be positive");
  if (n <= 0) throw std::invalid_argument("scale must be positive");
  RationalMatrix basis(dim, RationalVector(dim, Rational(0)));
  for (std::size_t i = 0; i < dim; ++i) basis[i][i] = Rational(1, n);
  return make_lattice(basis, "scaled(" + std::to_string(n) + ";" + std::to_string(dim) + ")");
}

IntegrationLattice integer_lattice(std::size_t dim) {
  auto lat = scaled_integer_lattice(1, dim);
  lat.label = "Z" + std::to_string(dim);
  return lat;
}

std::vector<std::string> validate(const IntegrationLattice& lat) {
  std::vector<std::string> problems;
  if (lat.dim == 0) {
    problems.emplace_back("zero dimension");
    return problems;
  }
  if (lat.basis.size() != lat.dim ||
      std::any_of(lat.basis.begin(), lat.basis.end(), [&](const auto& r) { return r.size() != lat.dim; })) {
    problems.emplace_back("basis shape does not match dimension");
    return problems;
  }
  if (lat.n_points <= 0) problems.emplace_back("n_points must be positive");
  const auto inv = inverse(lat.basis);
  if (!inv) {
    problems.emplace_back("basis rows are linearly dependent");
    return problems;
  }
  if (lat.n_points > 0 && abs(determinant(lat.basis)) != Rational(1, lat.n_points)) {
    problems.emplace_back("determinant mismatch");
  }
  // e_i = c·B has the integer solution c = row i of B^{-1} iff Z^d ⊆ L.
  for (const auto& row : *inv) {
    if (!std::all_of(row.begin(), row.end(), [](const Rational& v) { return is_integral(v); })) {
      problems.emplace_back("Z^d not contained");
      break;
    }
  }
  return problems;
}

std::vector<double> LatticePointSet::to_double() const {
  std::vector<double> out(numerators.size());
  const double inv = 1.0 / static_cast<double>(denominator);
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    out[i] = static_cast<double>(numerators[i]) * inv;
  }
  return out;
}

LatticePointSet enumerate_points(const IntegrationLattice& lat, std::int64_t cap) {
  if (lat.n_points > cap) {
    throw std::length_error("lattice has " + std::to_string(lat.n_points) +
                            " points, above the enumeration cap " + std::to_string(cap));
  }
  const std::size_t d = lat.dim;
  const std::int64_t n = lat.n_points;
  // N·L ⊆ Z^d, so every point is an integer vector over the denominator N.
  // The Hermite basis is upper triangular with diagonal 1/m_i, and the
  // combinations Σ k_i b_i with 0 ≤ k_i < m_i are exactly the cosets of Z^d.
  const RationalMatrix hb = canonical_basis(lat.basis);
  IntMatrix scaled(d, IntVector(d));
  std::vector<std::int64_t> multiplicity(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const Rational v = hb[i][k] * n;
      if (!is_integral(v)) throw std::logic_error("lattice point not on the 1/N grid");
      std::int64_t x = to_int64(mp::numerator(v)) % n;
      if (x < 0) x += n;
      scaled[i][k] = x;
    }
    const Rational inv_diag = 1 / hb[i][i];
    if (!is_integral(inv_diag)) throw std::logic_error("Hermite diagonal is not 1/m");
    multiplicity[i] = to_int64(mp::numerator(inv_diag));
  }

  LatticePointSet ps;
  ps.dim = d;
  ps.denominator = n;
  ps.source = lat;
  ps.numerators.reserve(static_cast<std::size_t>(n) * d);

  std::vector<std::int64_t> k(d, 0);
  std::vector<std::int64_t> acc(d, 0);
  while (true) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (k[i] == 0) continue;
      for (std::size_t c = 0; c < d; ++c) acc[c] = (acc[c] + k[i] * scaled[i][c]) % n;
    }
    ps.numerators.insert(ps.numerators.end(), acc.begin(), acc.end());
    std::size_t i = 0;
    while (i < d && ++k[i] == multiplicity[i]) k[i++] = 0;
    if (i == d) break;
  }

  // Lexicographic order of points.
  std::vector<std::size_t> order(ps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto pa = ps.point(a);
    const auto pb = ps.point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  std::vector<std::int64_t> sorted;
  sorted.reserve(ps.numerators.size());
  for (const auto idx : order) {
    const auto p = ps.point(idx);
    sorted.insert(sorted.end(), p.begin(), p.end());
  }
  ps.numerators = std::move(sorted);
  return ps;
}

DualBasis dual_basis(const IntegrationLattice& lat) {
  const auto inv = inverse(lat.basis);
  if (!inv) throw std::invalid_argument("basis rows are linearly dependent");
  const std::size_t d = lat.dim;
  // Rows of (B^{-1})^T generate L^⊥; they are integral because Z^d ⊆ L.
  BigMatrix rows(d, std::vector<Integer>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const Rational& v = (*inv)[j][i];
      if (!is_integral(v)) throw std::invalid_argument("Z^d not contained in lattice");
      rows[i][j] = mp::numerator(v);
    }
  }
  const BigMatrix h = hermite_normal_form(std::move(rows));
  DualBasis dual;
  dual.dim = d;
  for (const auto& row : h) {
    IntVector r;
    for (const auto& v : row) r.push_back(to_int64(v));
    dual.basis.push_back(std::move(r));
  }
  return dual;
}

bool in_dual(const IntegrationLattice& lat, std::span<const std::int64_t> h) {
  if (h.size() != lat.dim) throw std::invalid_argument("dual vector has wrong dimension");
  for (const auto& row : lat.basis) {
    Rational s = 0;
    for (std::size_t k = 0; k < lat.dim; ++k) s += row[k] * h[k];
    if (!is_integral(s)) return false;
  }
  return true;
}

bool is_closed_under_addition(const LatticePointSet& points) {
  const std::size_t d = points.dim;
  const std::int64_t n = points.denominator;
  std::set<std::vector<std::int64_t>> members;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points.point(i);
    members.emplace(p.begin(), p.end());
  }
  std::vector<std::int64_t> sum(d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i; j < points.size(); ++j) {
      const auto a = points.point(i);
      const auto b = points.point(j);
      for (std::size_t k = 0; k < d; ++k) sum[k] = (a[k] + b[k]) % n;
      if (!members.contains(sum)) return false;
    }
  }
  return true;
}

}  // namespace isolat
