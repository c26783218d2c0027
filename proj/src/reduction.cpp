#include "isolat/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace isolat {

__extension__ using Int128 = __int128;
__extension__ using UInt128 = unsigned __int128;

namespace mp = boost::multiprecision;

namespace {

using Real = long double;

std::int64_t checked_axpy(std::int64_t y, std::int64_t q, std::int64_t x) {
  std::int64_t prod = 0;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(q, x, &prod) || __builtin_sub_overflow(y, prod, &out)) {
    throw std::overflow_error("integer overflow during basis reduction");
  }
  return out;
}

struct GramSchmidt {
  std::vector<std::vector<Real>> mu;
  std::vector<Real> bstar;  // squared norms of the orthogonalised rows
};

template <class Row>
GramSchmidt gram_schmidt(const std::vector<Row>& b) {
  const std::size_t n = b.size();
  const std::size_t m = n ? b[0].size() : 0;
  GramSchmidt gs;
  gs.mu.assign(n, std::vector<Real>(n, 0));
  gs.bstar.assign(n, 0);
  std::vector<std::vector<Real>> star(n, std::vector<Real>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) star[i][k] = static_cast<Real>(b[i][k]);
    for (std::size_t j = 0; j < i; ++j) {
      Real dot = 0;
      for (std::size_t k = 0; k < m; ++k) dot += static_cast<Real>(b[i][k]) * star[j][k];
      gs.mu[i][j] = dot / gs.bstar[j];
      for (std::size_t k = 0; k < m; ++k) star[i][k] -= gs.mu[i][j] * star[j][k];
    }
    gs.mu[i][i] = 1;
    Real s = 0;
    for (std::size_t k = 0; k < m; ++k) s += star[i][k] * star[i][k];
    gs.bstar[i] = s;
  }
  return gs;
}

Int128 squared_norm(const std::vector<Int128>& v) {
  Int128 s = 0;
  for (const auto x : v) s += x * x;
  return s;
}

Integer to_integer(Int128 v) {
  const bool neg = v < 0;
  UInt128 u = neg ? static_cast<UInt128>(-(v + 1)) + 1 : static_cast<UInt128>(v);
  Integer r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? Integer(-r) : r;
}

void normalise_sign(LatticeVector& v) {
  const auto first = std::find_if(v.coefficients.begin(), v.coefficients.end(),
                                  [](std::int64_t c) { return c != 0; });
  if (first != v.coefficients.end() && *first < 0) {
    for (auto& c : v.coefficients) c = -c;
    for (auto& x : v.vector) x = -x;
  }
}

bool shorter(const LatticeVector& a, const LatticeVector& b) {
  if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
  return a.coefficients < b.coefficients;
}

// Fincke–Pohst enumeration of every nonzero integer combination x of the
// reduced rows with |Σ x_i b_i|^2 <= bound (up to floating slack); exact norms
// are recomputed by the caller.
void enumerate(const GramSchmidt& gs, Real bound, const std::function<void(const std::vector<std::int64_t>&)>& emit) {
  const std::size_t n = gs.bstar.size();
  std::vector<std::int64_t> x(n, 0);
  std::vector<Real> partial(n + 1, 0);
  const Real slack = bound * 1e-9L + 1e-12L;
  std::function<void(std::size_t)> level = [&](std::size_t i) {
    Real c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c -= static_cast<Real>(x[j]) * gs.mu[j][i];
    const Real rem = bound + slack - partial[i + 1];
    if (rem < 0) return;
    const Real w = std::sqrt(rem / gs.bstar[i]);
    const auto lo = static_cast<std::int64_t>(std::ceil(c - w - 1e-9L));
    const auto hi = static_cast<std::int64_t>(std::floor(c + w + 1e-9L));
    for (std::int64_t xi = lo; xi <= hi; ++xi) {
      const Real diff = static_cast<Real>(xi) - c;
      partial[i] = partial[i + 1] + diff * diff * gs.bstar[i];
      if (partial[i] > bound + slack) continue;
      x[i] = xi;
      if (i == 0) {
        if (std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v != 0; })) emit(x);
      } else {
        level(i - 1);
      }
    }
    x[i] = 0;
  };
  if (n > 0) level(n - 1);
}

IntMatrix scale_to_integers(const RationalMatrix& basis, Integer& den) {
  den = common_denominator(basis);
  IntMatrix out;
  for (const auto& row : basis) {
    IntVector r;
    for (const auto& v : row) r.push_back(to_int64(mp::numerator(Rational(v * den))));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

IntegerReduction lll_reduce_integer(const IntMatrix& basis, double delta) {
  if (!(delta > 0.25 && delta <= 1.0)) throw std::invalid_argument("LLL delta must lie in (1/4, 1]");
  const std::size_t n = basis.size();
  IntegerReduction out;
  out.basis = basis;
  out.transform.assign(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) out.transform[i][i] = 1;
  if (n == 0) return out;
  auto& b = out.basis;
  auto& u = out.transform;

  GramSchmidt gs = gram_schmidt(b);
  Real scale = 0;
  for (const auto v : gs.bstar) scale = std::max(scale, v);
  for (const auto v : gs.bstar) {
    if (v <= scale * 1e-24L) throw std::invalid_argument("basis rows are linearly dependent");
  }

  auto sub_row = [&](std::size_t k, std::size_t j, std::int64_t q) {
    for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] = checked_axpy(b[k][c], q, b[j][c]);
    for (std::size_t c = 0; c < n; ++c) u[k][c] = checked_axpy(u[k][c], q, u[j][c]);
  };

  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 1'000'000) throw std::runtime_error("LLL did not terminate");
    // Size reduction, repeated until floating rounding settles.
    for (int pass = 0; pass < 8; ++pass) {
      bool changed = false;
      for (std::size_t j = k; j-- > 0;) {
        const auto q = static_cast<std::int64_t>(std::llround(gs.mu[k][j]));
        if (q == 0) continue;
        sub_row(k, j, q);
        for (std::size_t l = 0; l <= j; ++l) gs.mu[k][l] -= static_cast<Real>(q) * gs.mu[j][l];
        changed = true;
      }
      if (!changed) break;
      gs = gram_schmidt(b);
    }
    const Real m = gs.mu[k][k - 1];
    if (gs.bstar[k] >= (static_cast<Real>(delta) - m * m) * gs.bstar[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      gs = gram_schmidt(b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return out;
}

ReducedBasis lll_reduce(const RationalMatrix& basis, double delta) {
  const std::size_t n = basis.size();
  if (n == 0) throw std::invalid_argument("empty basis");
  if (rank(basis) != n) throw std::invalid_argument("basis rows are linearly dependent");
  Integer den;
  const IntMatrix scaled = scale_to_integers(basis, den);
  const IntegerReduction red = lll_reduce_integer(scaled, delta);

  ReducedBasis rb;
  rb.dim = basis[0].size();
  rb.delta = delta;
  rb.transform = red.transform;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector exact;
    std::vector<double> approx;
    for (const auto v : red.basis[i]) {
      exact.emplace_back(Integer(v), den);
      approx.push_back(to_double(exact.back()));
    }
    rb.exact_rows.push_back(std::move(exact));
    rb.rows.push_back(std::move(approx));
  }
  // Certify exact_rows = U · basis in rational arithmetic.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < basis[0].size(); ++c) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += Rational(rb.transform[i][j]) * basis[j][c];
      if (s != rb.exact_rows[i][c]) throw std::logic_error("LLL transform does not reproduce the basis");
    }
  }
  return rb;
}

bool satisfies_lll(const std::vector<std::vector<double>>& rows, double delta, double tol) {
  const GramSchmidt gs = gram_schmidt(rows);
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::fabs(static_cast<double>(gs.mu[i][j])) > 0.5 + tol) return false;
    }
  }
  for (std::size_t k = 1; k < n; ++k) {
    const Real m = gs.mu[k][k - 1];
    const Real rhs = (static_cast<Real>(delta) - m * m) * gs.bstar[k - 1];
    if (gs.bstar[k] < rhs - static_cast<Real>(tol) * std::max<Real>(1, gs.bstar[k - 1])) return false;
  }
  return true;
}

std::vector<LatticeVector> vectors_within(const IntMatrix& basis, const Rational& norm_sq_bound) {
  const std::size_t n = basis.size();
  if (n == 0) throw std::invalid_argument("empty basis");
  if (n > kMaxEnumerationDim) {
    throw std::invalid_argument("enumeration is limited to dimension " + std::to_string(kMaxEnumerationDim));
  }
  const IntegerReduction red = lll_reduce_integer(basis);
  const GramSchmidt gs = gram_schmidt(red.basis);
  const std::size_t m = basis[0].size();

  std::vector<LatticeVector> found;
  enumerate(gs, static_cast<Real>(to_double(norm_sq_bound)), [&](const std::vector<std::int64_t>& x) {
    std::vector<Int128> v(m, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t c = 0; c < m; ++c) v[c] += static_cast<Int128>(x[i]) * red.basis[i][c];
    }
    const Integer nsq = to_integer(squared_norm(v));
    if (Rational(nsq) > norm_sq_bound) return;
    LatticeVector lv;
    lv.norm_sq = Rational(nsq);
    lv.norm = std::sqrt(nsq.convert_to<double>());
    for (const auto c : v) lv.vector.emplace_back(to_integer(c));
    // Coefficients relative to the input basis: x · U.
    lv.coefficients.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      Int128 s = 0;
      for (std::size_t i = 0; i < n; ++i) s += static_cast<Int128>(x[i]) * red.transform[i][j];
      lv.coefficients[j] = to_int64(to_integer(s));
    }
    normalise_sign(lv);
    found.push_back(std::move(lv));
  });
  std::sort(found.begin(), found.end(), shorter);
  found.erase(std::unique(found.begin(), found.end(),
                          [](const LatticeVector& a, const LatticeVector& b) {
                            return a.coefficients == b.coefficients;
                          }),
              found.end());
  return found;
}

std::vector<LatticeVector> short_vectors(const IntMatrix& basis, std::size_t count) {
  if (count == 0) return {};
  const IntegerReduction red = lll_reduce_integer(basis);
  Integer first = 0;
  for (const auto v : red.basis[0]) first += Integer(v) * v;
  Rational bound(first);
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto found = vectors_within(basis, bound);
    if (found.size() >= count) {
      found.resize(count);
      return found;
    }
    bound *= 2;
  }
  throw std::runtime_error("short vector search did not collect enough vectors");
}

LatticeVector shortest_vector(const IntMatrix& basis) { return short_vectors(basis, 1).front(); }

LatticeVector shortest_vector(const RationalMatrix& basis) {
  Integer den;
  const IntMatrix scaled = scale_to_integers(basis, den);
  LatticeVector v = shortest_vector(scaled);
  for (auto& x : v.vector) x /= den;
  v.norm_sq /= den * den;
  v.norm = std::sqrt(to_double(v.norm_sq));
  return v;
}

double cell_diameter(const ReducedBasis& rb) {
  const std::size_t n = rb.exact_rows.size();
  if (n == 0) return 0.0;
  const std::size_t m = rb.exact_rows[0].size();
  Integer den;
  const IntMatrix scaled = scale_to_integers(rb.exact_rows, den);
  Int128 best = 0;
  std::vector<Int128> s(m);
  // Negation symmetry: fix ε_0 = +1.
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    std::fill(s.begin(), s.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const bool negative = i > 0 && ((mask >> (i - 1)) & 1U);
      for (std::size_t c = 0; c < m; ++c) s[c] += negative ? -scaled[i][c] : scaled[i][c];
    }
    best = std::max(best, squared_norm(s));
  }
  const Rational d2(to_integer(best), den * den);
  return std::sqrt(to_double(d2));
}

SpectralReport spectral_test(const IntegrationLattice& lat, double delta) {
  if (lat.dim > kMaxEnumerationDim) {
    throw std::invalid_argument("spectral test is limited to dimension " + std::to_string(kMaxEnumerationDim));
  }
  const DualBasis dual = dual_basis(lat);
  const LatticeVector h = shortest_vector(dual.basis);
  SpectralReport rep;
  for (const auto& c : h.vector) rep.shortest_dual.push_back(to_int64(mp::numerator(c)));
  rep.dual_norm_sq = to_int64(mp::numerator(h.norm_sq));
  rep.dual_norm = std::sqrt(static_cast<double>(rep.dual_norm_sq));
  rep.sigma = 1.0 / rep.dual_norm;
  rep.lll_delta = delta;
  rep.diam_cell = cell_diameter(lll_reduce(lat.basis, delta));
  const auto d = static_cast<double>(lat.dim);
  rep.diam_bound = d * std::ldexp(1.0, static_cast<int>(lat.dim) - 1) * rep.sigma;
  return rep;
}

HyperplaneFamily hyperplane_family(const IntegrationLattice& lat, std::span<const std::int64_t> h) {
  if (h.size() != lat.dim) throw std::invalid_argument("dual vector has wrong dimension");
  if (std::all_of(h.begin(), h.end(), [](std::int64_t v) { return v == 0; })) {
    throw std::invalid_argument("dual vector must be nonzero");
  }
  if (!in_dual(lat, h)) throw std::invalid_argument("vector is not in the dual lattice");
  HyperplaneFamily fam;
  fam.normal.assign(h.begin(), h.end());
  double nsq = 0;
  for (const auto v : h) {
    nsq += static_cast<double>(v) * static_cast<double>(v);
    if (v < 0) fam.k_min += v;
    else fam.k_max += v;
  }
  fam.spacing = 1.0 / std::sqrt(nsq);
  return fam;
}

bool points_on_hyperplanes(const LatticePointSet& points, std::span<const std::int64_t> h) {
  if (h.size() != points.dim) throw std::invalid_argument("dual vector has wrong dimension");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points.point(i);
    Int128 s = 0;
    for (std::size_t k = 0; k < points.dim; ++k) s += static_cast<Int128>(h[k]) * p[k];
    if (s % points.denominator != 0) return false;
  }
  return true;
}

}  // namespace isolat
