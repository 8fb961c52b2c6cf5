#pragma once

#include <functional>
#include <optional>

#include "ivp/dynamics.hpp"
#include "ivp/groebner.hpp"
#include "ivp/maps.hpp"

namespace ivp {

/// A cataloged invariant variety of periodic points: generators written in
/// the map's invariant symbols, plus their expansions in the phase-space
/// variables.
struct VarietySpec {
  std::string map_id;   // lv3, lv4, pv, lv5, toda3
  std::size_t period = 0;
  RationalMap map;
  VarCtx hctx;                                              // invariant symbols
  std::vector<Polynomial> generators;                       // over hctx
  std::vector<std::pair<std::string, Polynomial>> hsubst;   // symbol -> poly in x
  std::vector<Polynomial> composed;                         // over the map's ctx
  std::size_t expected_codim = 0;                           // d - p
};

/// Printed catalog. Keys: (lv3, 2..5), (lv4, 2..3), (pv, 2..3), (lv5, 2),
/// (toda3, 2..3). Throws for anything else.
VarietySpec gamma_catalog(const std::string& map_id, std::size_t period);
std::vector<std::pair<std::string, std::size_t>> gamma_catalog_keys();

struct MembershipReport {
  std::string map_id;
  std::size_t period = 0;
  bool exact = false;    // symbolic reduction ran to completion
  bool member = false;
  bool u_regular = false;               // single-generator case only
  std::vector<RationalFunction> cofactors;  // u_j with X^n = x + u gamma
  std::size_t samples = 0, samples_ok = 0;  // sampling fallback numbers
  std::string note;
};

/// Ideal-membership verification of X^(n) = x + u gamma: the numerator of
/// every X_j^(n) - x_j must reduce to zero modulo the composed generators
/// (Groebner basis when there are two). Falls back to sampling evidence when
/// a budget is exhausted, and says so.
MembershipReport verify_membership(const VarietySpec& spec, const WorkBudget& budget = {},
                                   mpfr_prec_t precision = 256, std::uint64_t seed = 11);

/// Same reduction machinery against caller-supplied generators (negative
/// controls); never falls back to sampling.
MembershipReport verify_membership_against(const VarietySpec& spec,
                                           const std::vector<Polynomial>& composed,
                                           const WorkBudget& budget = {});

struct SamplePoint {
  CVec z;
  std::optional<std::vector<Rat>> exact;  // set when every coordinate is rational
};

/// Random points on the variety: all but codim coordinates drawn as small
/// rationals, the rest solved from the composed generators (exact for linear
/// slices, high-precision roots otherwise). Every returned point satisfies
/// |generator| < 1e-30.
std::vector<SamplePoint> sample_on_variety(const VarietySpec& spec, std::size_t count,
                                           mpfr_prec_t precision, std::uint64_t seed);

struct PeriodVerdict {
  std::size_t total = 0;
  std::size_t verified = 0;    // minimal period exactly n, orbit stays on variety
  std::size_t degenerate = 0;  // closes after a proper divisor of n
  std::size_t discarded = 0;   // singularity hit along the orbit
  std::size_t failed = 0;
};

/// Iterates every sample n steps: return residual < tol, intermediate points
/// stay on the variety (< tol), divisor periods flagged as degenerate.
PeriodVerdict verify_period_on_samples(const VarietySpec& spec,
                                       const std::vector<SamplePoint>& samples,
                                       mpfr_prec_t precision, double tol = 1e-20);

struct ScanVerdict {
  std::size_t total = 0;
  std::size_t failed_periodicity = 0;  // residual above threshold (or singular)
  std::size_t passed = 0;
};

/// Contrast experiment: points sampled on the a = 0 period-2 surface iterated
/// under the deformed map must miss periodicity.
ScanVerdict uncorrelated_scan(const Rat& a, std::size_t n, std::size_t samples,
                              mpfr_prec_t precision, std::uint64_t seed,
                              double fail_threshold = 1e-6);

struct IsolationScan {
  std::size_t converged = 0;
  std::size_t on_variety = 0;
  std::size_t on_special_loci = 0;
  std::size_t off_everything = 0;
};

/// Newton scan for period-n points of the a = 0 map classified against the
/// cataloged variety and the special period-3 lines.
IsolationScan proposition2_scan(std::size_t n, std::size_t starts, mpfr_prec_t precision,
                                std::uint64_t seed, double tol = 1e-12);

struct SpecialLocus {
  std::string description;
  std::size_t period = 0;
  bool rational = false;
  /// Rational parametrization (when `rational`).
  std::function<std::vector<Rat>(const Rat&)> point_exact;
  /// Numeric parametrization for the cube-root-of-unity lines.
  std::function<CVec(const Complex&)> point_numeric;
};

/// Fixed-point line arrangement and the period-3 line systems of the 3d map.
std::vector<SpecialLocus> special_loci_catalog();

/// Primitive cube root of unity at the working precision.
Complex omega();

}  // namespace ivp
