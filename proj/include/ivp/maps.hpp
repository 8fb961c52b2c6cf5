#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ivp/bigfloat.hpp"
#include "ivp/ratfunc.hpp"

namespace ivp {

/// A named d-dimensional rational map together with its known invariants.
/// The context holds the d state variables first; a symbolic parameter (the
/// deformation a of the 3d Lotka-Volterra map) appends one more variable and
/// is carried along compositions untouched.
struct RationalMap {
  std::string name;        // catalog id: lv3, lv, pv, toda
  std::string descriptor;  // reproducible CLI spelling, e.g. "lv3(a=1/2)"
  std::size_t dim = 0;     // state dimension d
  VarCtx ctx;
  std::vector<RationalFunction> components;  // dim entries
  std::vector<std::pair<std::string, RationalFunction>> invariants;
  std::map<std::string, std::optional<Rat>> parameters;  // nullopt = symbolic

  bool has_symbolic_params() const {
    for (const auto& [k, v] : parameters)
      if (!v) return true;
    return false;
  }

  /// Components extended with identities for parameter variables, matching
  /// the context arity for composition.
  std::vector<RationalFunction> compose_args() const;

  /// One exact step. Throws SingularityHit on a vanishing denominator.
  std::vector<Rat> step(std::span<const Rat> x) const;
  CVec step(const CVec& x) const;

  nlohmann::json descriptor_json() const;
};

/// The deformed 3d Lotka-Volterra map with offsets (a, 2a, 0); the two
/// invariants r = xyz and s = (1-x)(1-y)(1-z) are attached only at a = 0.
/// `a` = nullopt builds the map with a as a symbolic ring variable.
RationalMap build_lv3(const std::optional<Rat>& a);

/// d-dimensional Lotka-Volterra map from the defining relation
/// X_j (1 - X_{j-1}) = x_j (1 - x_{j+1}), solved by cyclic elimination.
RationalMap build_lv_general(std::size_t d);

/// Invariants of the d-dimensional map: H_k (sums of products of
/// p_j = x_j(1-x_{j-1}) over cyclically non-adjacent index sets) for
/// k = 1..[d/2], plus r = x_1...x_d. Count is [d/2]+1.
std::vector<std::pair<std::string, Polynomial>> lv_invariants(std::size_t d);

/// Closed-form H_k for one k (0..d); matches the characteristic-polynomial
/// coefficients of the Lax product.
Polynomial lv_hk_closed_form(std::size_t d, std::size_t k, const VarCtx& ctx);

/// Discrete Painleve V map with invariants r, s, v.
RationalMap build_pv();

/// 3-point Toda lattice map on (I_1..I_3, V_1..V_3) with invariants
/// T1, T2, T3, T3p. Only N = 3 is supported.
RationalMap build_toda(std::size_t N);

/// Variable bridge from a 2N-dimensional Lotka-Volterra state to the Toda
/// state: I_j = (1-x_{2j-1})(1-x_{2j}), V_j = x_{2j} x_{2j+1} (cyclic).
std::vector<Rat> lv_toda_bridge(std::span<const Rat> x);
/// The same bridge as rational functions of x_1..x_{2N}.
std::vector<RationalFunction> lv_toda_bridge_symbolic(std::size_t d);

/// Parses "name(key=value,...)" descriptors: lv3(a=1/2), lv3(a=sym),
/// lv(d=5), pv, toda(N=3). Errors carry the offending position.
RationalMap parse_map_descriptor(const std::string& text);

}  // namespace ivp
