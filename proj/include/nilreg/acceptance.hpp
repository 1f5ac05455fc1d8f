#pragma once

#include <string>
#include <vector>

#include "nilreg/catalog.hpp"

namespace nilreg {

struct CriterionResult {
  std::string id;
  bool pass = false;
  double seconds = 0;
  double budget_s = 0;
  std::string detail;
};

std::vector<std::string> criterion_ids();

// Runs one acceptance criterion end to end at its pinned tolerances.
CriterionResult run_criterion(const Catalog& cat, const std::string& id,
                              int workers = 2);

}  // namespace nilreg
