#pragma once

// Text formats for lattices and point sets.
//
// Lattice spec:
//   d N
//   rank1: g1 g2 ... gd          (N is the modulus n)
// or
//   d N
//   p/q p/q ... p/q              (d rows of d rationals, N must equal 1/|det|)
//
// Blank lines and lines starting with '#' are ignored.

#include <iosfwd>
#include <string>
#include <string_view>

#include "isolat/lattice.hpp"

namespace isolat {

IntegrationLattice parse_lattice_spec(std::string_view text);
IntegrationLattice read_lattice_file(const std::string& path);

/// Always writes the basis form, which round-trips exactly.
std::string format_lattice_spec(const IntegrationLattice& lat);

/// Resolves a lattice reference: "fib:K", "rank1:N:g1,g2,...",
/// "korobov:N:a:d", "scaled:N:d", "Z:d", or else a path to a spec file.
IntegrationLattice resolve_lattice(const std::string& ref);

struct CsvOptions {
  bool exact = false;  // "p/q" cells instead of decimals
  int precision = 17;
};

void write_points_csv(std::ostream& os, const LatticePointSet& points, const CsvOptions& opts = {});

}  // namespace isolat
