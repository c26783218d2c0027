#pragma once

// Dense two-phase simplex for the small linear programs that appear in the
// geometry code (Chebyshev centres, bounding boxes, feasibility).

#include <vector>

namespace isolat::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  std::vector<double> x;
  double value = 0.0;
};

/// maximize c·x subject to A x <= b, x >= 0 (Bland's rule).
Result maximize(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                const std::vector<double>& c);

/// maximize c·x subject to A x <= b with x unrestricted in sign.
Result maximize_free(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c);

}  // namespace isolat::lp
