#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "ivp/budget.hpp"

namespace ivp {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  nlohmann::json details;
};

struct AcceptanceOptions {
  long precision = 256;
  std::uint64_t seed = 20240601;
  WorkBudget budget = WorkBudget::from_env();
  std::size_t scan_starts = 2000;    // criterion 9
  std::size_t search_starts = 5000;  // criterion 12
  bool progress = true;              // one line per criterion as it finishes
};

/// Runs the full verification battery; one entry per criterion, in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& log);

}  // namespace ivp
