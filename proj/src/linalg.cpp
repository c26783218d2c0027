#include "isolat/linalg.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace isolat {

namespace mp = boost::multiprecision;

std::string to_string(const Rational& r) {
  const Integer num = mp::numerator(r);
  const Integer den = mp::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

Integer parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("bad integer literal");
  Integer v = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c < '0' || c > '9') {
      throw std::invalid_argument("bad integer literal: " + std::string(s));
    }
    v = v * 10 + (c - '0');
  }
  return negative ? Integer(-v) : v;
}

Integer pow10(unsigned e) {
  Integer v = 1;
  for (unsigned i = 0; i < e; ++i) v *= 10;
  return v;
}

Rational parse_decimal(std::string_view s) {
  std::string_view mantissa = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    exponent = std::stol(std::string(s.substr(e + 1)));
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (const char c : mantissa) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal literal");
      seen_dot = true;
    } else {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad decimal literal");
  Rational v(parse_integer(digits));
  const long shift = exponent - frac_digits;
  if (shift >= 0) {
    v *= pow10(static_cast<unsigned>(shift));
  } else {
    v /= pow10(static_cast<unsigned>(-shift));
  }
  return negative ? Rational(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(text.substr(0, slash));
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in " + std::string(text));
    return Rational(num, den);
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return Rational(parse_integer(text));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  // mant * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational v(scaled);
  const int shift = exp - 53;
  Integer two_pow = 1;
  two_pow <<= static_cast<unsigned>(std::abs(shift));
  if (shift >= 0) return v * two_pow;
  return v / two_pow;
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, RationalVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[c]);
    std::swap(inv[pivot], inv[c]);
    const Rational p = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= p;
      inv[c][k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

std::size_t rank(RationalMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t k = r + 1; k < rows; ++k) {
      if (m[k][c] == 0) continue;
      const Rational f = m[k][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[k][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

Integer common_denominator(const RationalMatrix& m) {
  Integer l = 1;
  for (const auto& row : m) {
    for (const auto& v : row) {
      const Integer d = mp::denominator(v);
      l = l / mp::gcd(l, d) * d;
    }
  }
  return l;
}

bool is_integral(const Rational& r) { return mp::denominator(r) == 1; }

namespace {

// Floor division with a positive divisor.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && (a < 0)) q -= 1;
  return q;
}

}  // namespace

BigMatrix hermite_normal_form(BigMatrix rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows[0].size();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    // Euclid on column c over rows[pivot_row..] until a single nonzero remains.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r) {
        if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool reduced_any = false;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        const Integer q = rows[r][c] / rows[pivot_row][c];
        for (std::size_t k = c; k < cols; ++k) rows[r][k] -= q * rows[pivot_row][k];
        if (rows[r][c] != 0) reduced_any = true;
      }
      if (!reduced_any) break;
    }
    if (rows[pivot_row][c] == 0) continue;
    if (rows[pivot_row][c] < 0) {
      for (auto& v : rows[pivot_row]) v = -v;
    }
    const Integer p = rows[pivot_row][c];
    for (std::size_t r = 0; r < pivot_row; ++r) {
      const Integer q = floor_div(rows[r][c], p);
      if (q == 0) continue;
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= q * rows[pivot_row][k];
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

RationalMatrix canonical_basis(const RationalMatrix& basis) {
  const Integer den = common_denominator(basis);
  BigMatrix scaled;
  scaled.reserve(basis.size());
  for (const auto& row : basis) {
    std::vector<Integer> r;
    r.reserve(row.size());
    for (const auto& v : row) r.push_back(mp::numerator(Rational(v * den)));
    scaled.push_back(std::move(r));
  }
  const BigMatrix h = hermite_normal_form(std::move(scaled));
  RationalMatrix out;
  out.reserve(h.size());
  for (const auto& row : h) {
    RationalVector r;
    r.reserve(row.size());
    for (const auto& v : row) r.emplace_back(v, den);
    out.push_back(std::move(r));
  }
  return out;
}

std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace isolat
