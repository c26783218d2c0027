#pragma once

// Exact integer and rational linear algebra used by the lattice code.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace isolat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;
using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;
using BigMatrix = std::vector<std::vector<Integer>>;

/// "p/q" (or "p" for integers), always in lowest terms with q > 0.
std::string to_string(const Rational& r);

/// Accepts "p/q", "p", or a finite decimal such as "0.125" or "-3e-2".
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

/// Exact conversion of a binary64 value (every finite double is a dyadic rational).
Rational exact_rational(double x);

Rational determinant(RationalMatrix m);

/// Inverse of a square matrix; nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

std::size_t rank(RationalMatrix m);

/// Least common multiple of all denominators.
Integer common_denominator(const RationalMatrix& m);

bool is_integral(const Rational& r);

/// Row-style Hermite normal form of a full-column-rank integer generator
/// matrix: upper triangular, positive pivots, entries above each pivot
/// reduced into [0, pivot). Zero rows are dropped.
BigMatrix hermite_normal_form(BigMatrix rows);

/// Canonical basis of the lattice generated by the rows of `basis`
/// (common-denominator scaling followed by Hermite normal form).
RationalMatrix canonical_basis(const RationalMatrix& basis);

std::int64_t to_int64(const Integer& v);

}  // namespace isolat
