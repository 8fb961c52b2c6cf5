#pragma once

#include <cstdint>

namespace ivp {

/// Work limits for open-ended symbolic computations (iteration, Buchberger).
/// Defaults are sized for desk-scale runs; the CLI allows overriding them
/// through IVPLAB_MAX_TERMS / IVPLAB_MAX_SPAIRS environment variables.
struct WorkBudget {
  std::uint64_t max_terms = 4'000'000;   // largest polynomial allowed to exist
  std::uint64_t max_spairs = 20'000;     // Buchberger S-polynomial limit
  std::uint64_t max_basis = 2'000;       // Buchberger basis size limit

  static WorkBudget from_env();
};

}  // namespace ivp
