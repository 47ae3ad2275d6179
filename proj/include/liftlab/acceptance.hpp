#pragma once

#include <string>
#include <vector>

namespace liftlab {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

std::vector<std::string> acceptance_ids();

/// Runs one numbered acceptance criterion end to end at its pinned tolerance.
CriterionResult run_acceptance(const std::string& id, int jobs = 1);

}  // namespace liftlab
