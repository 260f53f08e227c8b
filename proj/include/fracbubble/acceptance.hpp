#pragma once

#include <string>
#include <vector>

#include "fracbubble/runconfig.hpp"

namespace fracbubble {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the twelve verification criteria at their pinned tolerances.
// Criterion 12 re-runs the suite and byte-compares the serialized results.
std::vector<CriterionResult> run_acceptance(const RunConfig& cfg);

// CSV serialization of a result set (id, name, passed, detail columns).
std::string acceptance_csv(const std::vector<CriterionResult>& results);

}  // namespace fracbubble
