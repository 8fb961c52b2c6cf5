#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivp/bigfloat.hpp"
#include "ivp/budget.hpp"
#include "ivp/maps.hpp"

namespace ivp {

// ---------------------------------------------------------------------------
// Symbolic iteration and degree growth

struct IterateResult {
  /// X^(1) .. X^(k), state components only, fully cancelled.
  std::vector<std::vector<RationalFunction>> iterates;
  bool budget_hit = false;
};

/// Repeated composition with cancellation after every step.
IterateResult iterate_symbolic(const RationalMap& map, std::size_t n,
                               const WorkBudget& budget = {});

struct DegreeSequence {
  std::string map_descriptor;
  std::string watched;
  std::vector<long> degrees;            // degree of the first component's
                                        // numerator in the watched variable
  std::vector<std::size_t> term_counts; // numerator terms containing it
  bool budget_hit = false;
};

DegreeSequence degree_growth(const RationalMap& map, std::size_t n_max, const std::string& var,
                             const WorkBudget& budget = {});

struct EntropyEstimate {
  double slope = 0.0;              // least-squares slope of ln D_n vs n
  std::size_t window_lo = 0;       // inclusive n-range of the fit
  std::size_t window_hi = 0;
  std::vector<double> ratios;      // successive D_{n+1}/D_n
};

/// Fits ln D_n over [window_lo, window_hi] (window_hi = 0 means the full
/// horizon). Requires at least 3 usable entries with n >= 2.
EntropyEstimate entropy_estimate(const DegreeSequence& seq, std::size_t window_lo = 2,
                                 std::size_t window_hi = 0);

// ---------------------------------------------------------------------------
// Jacobians and multipliers

using JacobianMatrix = std::vector<std::vector<RationalFunction>>;

/// Symbolic Jacobian: entry (i,j) = d component_i / d x_j.
JacobianMatrix jacobian(const RationalMap& map);
RationalFunction jacobian_det(const RationalMap& map);

struct OrbitReport {
  CVec point;
  std::size_t period = 0;
  Real residual;                     // max-norm of F^n(x) - x
  CVec multipliers;
  std::vector<std::string> classes;  // attractive / repulsive / neutral
  long precision_bits = 0;
  bool minimal_period = true;
};

/// Multipliers at an approximately period-n point: product of step Jacobians
/// along the orbit, eigenvalues via the characteristic polynomial.
/// Throws SingularityHit when a denominator vanishes on the orbit and Error
/// when x0 fails the incoming residual tolerance.
OrbitReport multipliers_at(const RationalMap& map, const CVec& x0, std::size_t n,
                           mpfr_prec_t precision, double neutral_band = 1e-8,
                           double tol_in = 1e-6);

/// J(x_{n-1}) ... J(x_0) along the orbit, at the current working precision.
CMat orbit_jacobian(const RationalMap& map, const CVec& x0, std::size_t n);

// ---------------------------------------------------------------------------
// Periodic-point search

struct SearchConfig {
  std::size_t period = 1;
  std::size_t starts = 100;
  mpfr_prec_t precision = 256;
  std::uint64_t seed = 1;
  double start_scale = 2.0;        // complex Gaussian scale for starts
  int max_newton_iters = 200;
  int max_halvings = 30;
  std::size_t threads = 0;         // 0 = hardware concurrency
};

/// Damped Newton on F^n(x) - x from seeded random complex starts. Results are
/// refined at doubled precision, deduplicated (radius 1e-10), filtered to
/// minimal period n, re-verified by forward iteration, and sorted
/// deterministically.
std::vector<OrbitReport> newton_periodic_search(const RationalMap& map, const SearchConfig& cfg);

// ---------------------------------------------------------------------------
// Special orbits of the 3d Lotka-Volterra map at a = 0

struct SpecialOrbit {
  bool ok = false;
  std::size_t period = 0;          // 3 generically, 1 at t = 1
  std::vector<std::vector<Rat>> orbit;
};

/// Exact check of the cycle (1,1,t) -> (t,1,1) -> (1,t,1) -> (1,1,t).
SpecialOrbit special_orbit_check(const Rat& t);

}  // namespace ivp
