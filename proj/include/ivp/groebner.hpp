#pragma once

#include <vector>

#include "ivp/budget.hpp"
#include "ivp/polynomial.hpp"

namespace ivp {

struct ReduceResult {
  std::vector<Polynomial> quotients;  // one per basis element
  Polynomial remainder;
};

/// Multivariate division: p = sum q_i b_i + r with no monomial of r divisible
/// by any basis leading monomial. Deterministic given the order and the basis
/// sequence (first matching divisor wins).
ReduceResult poly_reduce(const Polynomial& p, const std::vector<Polynomial>& basis,
                         const TermOrder& ord);

struct GroebnerStats {
  std::uint64_t spairs_considered = 0;
  std::uint64_t spairs_reduced = 0;
  std::uint64_t basis_size = 0;
};

/// Buchberger with the normal selection strategy and both classical skip
/// criteria; result is the reduced basis (monic, tail-reduced, sorted by
/// leading monomial). Throws BudgetExceeded carrying partial statistics.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens, const TermOrder& ord,
                                       const WorkBudget& budget = {},
                                       GroebnerStats* stats = nullptr);

}  // namespace ivp
