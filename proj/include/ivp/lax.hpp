#pragma once

#include "ivp/maps.hpp"
#include "ivp/polymatrix.hpp"

namespace ivp {

/// Lax matrices of the d-dimensional Lotka-Volterra map: R is bidiagonal
/// cyclic with 1-x_j on the diagonal, L carries 1 on the first cyclic
/// subdiagonal and x_{j-1} on the second; A = L R has unit diagonal, unit
/// subdiagonal and p_{j-1} = x_{j-1}(1-x_{j-2}) on the second subdiagonal.
/// charpoly_coeffs holds H_0..H_d from
/// det(A - lambda) = (-1)^{d-1} sum_k H_k (lambda-1)^k.
struct LaxSystem {
  std::size_t d = 0;
  VarCtx ctx;
  PolyMatrix R, L, A;
  std::vector<Polynomial> charpoly_coeffs;  // H_0..H_d
};

LaxSystem build_lax(std::size_t d);
/// Same, over the first d variables of a caller-chosen context.
LaxSystem build_lax(std::size_t d, VarCtx ctx);

struct LaxResidual {
  bool zero = false;
  std::size_t row = 0, col = 0;     // first offending entry when nonzero
  RationalFunction entry;
};

/// Checks L(X)R(X) = R(x)L(x) with X the image under `map` (which must be a
/// d-dimensional map over the same variables).
LaxResidual verify_lax_equation(const RationalMap& map);
LaxResidual verify_lax_equation(std::size_t d);

/// Named H_0..H_d read off the characteristic polynomial.
std::vector<std::pair<std::string, Polynomial>> extract_invariants(const LaxSystem& sys);

/// Symbolic test H(F(x)) = H(x) by cross multiplication; exact. On failure
/// `witness` (when given) receives the nonzero difference numerator.
bool verify_invariance(const RationalMap& map, const RationalFunction& H,
                       Polynomial* witness = nullptr);

}  // namespace ivp
