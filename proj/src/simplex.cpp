#include "isolat/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace isolat::lp {

namespace {

constexpr double kEps = 1e-11;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& obj(std::size_t c) { return at(rows_, c); }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> t_;
};

// Runs Bland-rule iterations on columns [0, usable). Returns false if unbounded.
bool run(Tableau& t, std::vector<std::size_t>& basis, std::size_t usable) {
  for (int iter = 0; iter < 100000; ++iter) {
    std::size_t enter = usable;
    for (std::size_t c = 0; c < usable; ++c) {
      if (t.obj(c) < -kEps) {
        enter = c;
        break;
      }
    }
    if (enter == usable) return true;
    std::size_t leave = t.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= kEps) continue;
      const double ratio = t.rhs(r) / a;
      if (ratio < best - kEps || (ratio <= best + kEps && leave < t.rows() && basis[r] < basis[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == t.rows()) return false;
    t.pivot(leave, enter);
    basis[leave] = enter;
  }
  throw std::runtime_error("simplex iteration limit reached");
}

}  // namespace

Result maximize(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                const std::vector<double>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw std::invalid_argument("LP shape mismatch");
  std::size_t n_art = 0;
  for (const double bi : b) n_art += bi < 0 ? 1 : 0;
  // Columns: x (n), slacks (m), artificials (n_art).
  const std::size_t cols = n + m + n_art;
  Tableau t(m, cols);
  std::vector<std::size_t> basis(m);
  std::size_t art = n + m;
  for (std::size_t r = 0; r < m; ++r) {
    if (a[r].size() != n) throw std::invalid_argument("LP shape mismatch");
    const double sign = b[r] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.at(r, j) = sign * a[r][j];
    t.at(r, n + r) = sign;
    t.rhs(r) = sign * b[r];
    if (b[r] < 0) {
      t.at(r, art) = 1.0;
      basis[r] = art++;
    } else {
      basis[r] = n + r;
    }
  }

  if (n_art > 0) {
    // Phase 1: maximize -Σ artificials.
    for (std::size_t j = n + m; j < cols; ++j) t.obj(j) = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < n + m) continue;
      for (std::size_t j = 0; j <= cols; ++j) t.at(m, j) -= t.at(r, j);
    }
    run(t, basis, cols);
    if (t.obj(cols) < -1e-9) return {Status::infeasible, {}, 0.0};
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < n + m) continue;
      for (std::size_t j = 0; j < n + m; ++j) {
        if (std::fabs(t.at(r, j)) > 1e-9) {
          t.pivot(r, j);
          basis[r] = j;
          break;
        }
      }
    }
  }

  // Phase 2 objective row.
  for (std::size_t j = 0; j <= cols; ++j) t.obj(j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) t.obj(j) = -c[j];
  for (std::size_t r = 0; r < m; ++r) {
    const double f = t.obj(basis[r]);
    if (f == 0.0) continue;
    for (std::size_t j = 0; j <= cols; ++j) t.at(m, j) -= f * t.at(r, j);
  }
  if (!run(t, basis, n + m)) return {Status::unbounded, {}, 0.0};

  Result res;
  res.status = Status::optimal;
  res.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) res.x[basis[r]] = t.rhs(r);
  }
  res.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

Result maximize_free(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c) {
  const std::size_t n = c.size();
  std::vector<std::vector<double>> split(a.size(), std::vector<double>(2 * n));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      split[r][j] = a[r][j];
      split[r][n + j] = -a[r][j];
    }
  }
  std::vector<double> cc(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    cc[j] = c[j];
    cc[n + j] = -c[j];
  }
  Result r = maximize(split, b, cc);
  if (r.status != Status::optimal) return r;
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = r.x[j] - r.x[n + j];
  r.x = std::move(x);
  return r;
}

}  // namespace isolat::lp
