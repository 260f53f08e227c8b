#pragma once

#include <string>
#include <vector>

namespace fracbubble {

// Two-sided verification record: the two values compared, their absolute
// and relative residuals, and a pass flag at the tolerance used.
struct ResidualReport {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double scale = 0.0;  // magnitude the relative residual is measured against
  bool passed = false;
  std::vector<double> details;  // per-sample or per-term values, check-specific
};

}  // namespace fracbubble
