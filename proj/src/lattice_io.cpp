#include "isolat/lattice_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace isolat {

namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

IntegrationLattice parse_lattice_spec(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream is{std::string(text)};
  for (std::string line; std::getline(is, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line.substr(first));
  }
  if (lines.empty()) throw std::invalid_argument("empty lattice spec");
  const auto header = tokens(lines[0]);
  if (header.size() != 2) throw std::invalid_argument("lattice spec header must be 'd N'");
  const long d = std::stol(header[0]);
  const long long n = std::stoll(header[1]);
  if (d <= 0) throw std::invalid_argument("zero dimension");
  if (n <= 0) throw std::invalid_argument("N must be positive");
  const auto dim = static_cast<std::size_t>(d);

  if (lines.size() >= 2 && lines[1].rfind("rank1:", 0) == 0) {
    const auto gs = tokens(std::string_view(lines[1]).substr(6));
    if (gs.size() != dim) throw std::invalid_argument("rank1 generator has wrong length");
    std::vector<std::int64_t> g;
    for (const auto& t : gs) g.push_back(std::stoll(t));
    return rank1_lattice(n, g);
  }

  if (lines.size() != dim + 1) throw std::invalid_argument("expected d basis rows");
  RationalMatrix basis;
  for (std::size_t i = 0; i < dim; ++i) {
    const auto row = tokens(lines[i + 1]);
    if (row.size() != dim) throw std::invalid_argument("basis row has wrong length");
    RationalVector r;
    for (const auto& t : row) r.push_back(parse_rational(t));
    basis.push_back(std::move(r));
  }
  auto lat = make_lattice(basis);
  if (lat.n_points != n) {
    throw std::invalid_argument("determinant mismatch: basis has N=" + std::to_string(lat.n_points) +
                                " but header claims " + std::to_string(n));
  }
  return lat;
}

IntegrationLattice read_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lattice file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  auto lat = parse_lattice_spec(ss.str());
  if (lat.label.empty()) lat.label = path;
  return lat;
}

std::string format_lattice_spec(const IntegrationLattice& lat) {
  std::ostringstream os;
  if (!lat.label.empty()) os << "# " << lat.label << "\n";
  os << lat.dim << " " << lat.n_points << "\n";
  for (const auto& row : lat.basis) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) os << " ";
      os << to_string(row[k]);
    }
    os << "\n";
  }
  return os.str();
}

IntegrationLattice resolve_lattice(const std::string& ref) {
  const auto parts = split(ref, ':');
  const std::string& kind = parts[0];
  if (kind == "fib" && parts.size() == 2) return fibonacci_lattice(std::stoi(parts[1]));
  if (kind == "rank1" && parts.size() == 3) {
    std::vector<std::int64_t> g;
    for (const auto& t : split(parts[2], ',')) g.push_back(std::stoll(t));
    return rank1_lattice(std::stoll(parts[1]), g);
  }
  if (kind == "korobov" && parts.size() == 4) {
    return korobov_lattice(std::stoll(parts[1]), std::stoll(parts[2]), std::stoul(parts[3]));
  }
  if (kind == "scaled" && parts.size() == 3) {
    return scaled_integer_lattice(std::stoll(parts[1]), std::stoul(parts[2]));
  }
  if (kind == "Z" && parts.size() == 2) return integer_lattice(std::stoul(parts[1]));
  return read_lattice_file(ref);
}

void write_points_csv(std::ostream& os, const LatticePointSet& points, const CsvOptions& opts) {
  for (std::size_t k = 0; k < points.dim; ++k) {
    if (k) os << ",";
    os << "x" << k + 1;
  }
  os << "\n";
  std::ostringstream cell;
  cell << std::setprecision(opts.precision);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < points.dim; ++k) {
      if (k) os << ",";
      if (opts.exact) {
        os << to_string(points.coordinate(i, k));
      } else {
        cell.str({});
        cell << static_cast<double>(points.point(i)[k]) / static_cast<double>(points.denominator);
        os << cell.str();
      }
    }
    os << "\n";
  }
}

}  // namespace isolat
