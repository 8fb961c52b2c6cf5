#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ivp {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A symbolic computation ran past its configured work budget.
/// Carries the counters observed at the moment of abandonment so callers
/// can report how far the computation got.
class BudgetExceeded : public Error {
public:
  BudgetExceeded(const std::string& what, std::uint64_t terms, std::uint64_t steps)
      : Error(what), term_count(terms), step_count(steps) {}

  std::uint64_t term_count = 0;
  std::uint64_t step_count = 0;
};

class DivisionByZero : public Error {
public:
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class SingularityHit : public Error {
public:
  explicit SingularityHit(const std::string& what) : Error(what) {}
};

}  // namespace ivp
