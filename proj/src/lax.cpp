#include "ivp/lax.hpp"

namespace ivp {

namespace {

std::vector<std::string> lax_names(std::size_t d) {
  std::vector<std::string> names;
  for (std::size_t j = 1; j <= d; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

}  // namespace

LaxSystem build_lax(std::size_t d) { return build_lax(d, VarContext::make(lax_names(d))); }

LaxSystem build_lax(std::size_t d, VarCtx ctx) {
  if (d < 3) throw Error("Lax system needs dimension >= 3");
  if (ctx->size() < d) throw Error("Lax system: context too small");
  Polynomial one = Polynomial::constant(ctx, Rat(1));
  auto x = [&](std::size_t i) { return Polynomial::variable(ctx, i % d); };

  PolyMatrix R(d, d, ctx), L(d, d, ctx);
  for (std::size_t i = 0; i < d; ++i) {
    R.at(i, i) = one - x(i);
    R.at(i, (i + 1) % d) = one;
    L.at(i, (i + d - 1) % d) = one;
    L.at(i, (i + d - 2) % d) = x((i + d - 1) % d);
  }
  PolyMatrix A = L * R;

  // Characteristic polynomial in an adjoined eigenvalue symbol.
  auto names = ctx->names();
  names.push_back("lam");
  VarCtx ectx = VarContext::make(names);
  std::size_t li = ctx->size();
  PolyMatrix M(d, d, ectx);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      M.at(i, j) = A.at(i, j).with_ctx(ectx);
      if (i == j) M.at(i, j) -= Polynomial::variable(ectx, li);
    }
  Polynomial det = d <= 5 ? M.det_cofactor() : M.det_bareiss();

  // Expand around lambda = 1: substitute lam -> lam + 1 and read coefficients.
  std::vector<Polynomial> args;
  for (std::size_t v = 0; v < li; ++v) args.push_back(Polynomial::variable(ectx, v));
  args.push_back(Polynomial::variable(ectx, li) + Polynomial::constant(ectx, Rat(1)));
  Polynomial shifted = Polynomial::substitute(det, args);
  auto coeffs = coeffs_in_var(shifted, li);
  coeffs.resize(d + 1, Polynomial(ectx));

  LaxSystem sys{d, ctx, R, L, A, {}};
  Rat sign = (d % 2 == 0) ? Rat(-1) : Rat(1);  // (-1)^(d-1)
  for (std::size_t k = 0; k <= d; ++k)
    sys.charpoly_coeffs.push_back(drop_to_ctx(coeffs[k] * sign, ctx));
  return sys;
}

std::vector<std::pair<std::string, Polynomial>> extract_invariants(const LaxSystem& sys) {
  std::vector<std::pair<std::string, Polynomial>> out;
  for (std::size_t k = 0; k < sys.charpoly_coeffs.size(); ++k)
    out.emplace_back("H" + std::to_string(k), sys.charpoly_coeffs[k]);
  return out;
}

LaxResidual verify_lax_equation(const RationalMap& map) {
  std::size_t d = map.dim;
  LaxSystem sys = build_lax(d, map.ctx);
  VarCtx ctx = map.ctx;

  // Map components as substitution arguments for the matrix entries.
  std::vector<RationalFunction> args = map.compose_args();

  auto lift = [&](const PolyMatrix& P, bool compose) {
    RFMatrix m(d, std::vector<RationalFunction>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Polynomial e = P.at(i, j).with_ctx(ctx);
        m[i][j] = compose ? compose_poly(e, args) : RationalFunction(e);
      }
    return m;
  };

  RFMatrix lhs = rf_mul(lift(sys.L, true), lift(sys.R, true));
  RFMatrix rhs = rf_mul(lift(sys.R, false), lift(sys.L, false));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      RationalFunction diff = lhs[i][j] - rhs[i][j];
      if (!diff.is_zero()) return {false, i, j, diff};
    }
  return {true, 0, 0, {}};
}

LaxResidual verify_lax_equation(std::size_t d) { return verify_lax_equation(build_lv_general(d)); }

bool verify_invariance(const RationalMap& map, const RationalFunction& H, Polynomial* witness) {
  std::vector<RationalFunction> args = map.compose_args();
  RationalFunction Hm = map.ctx.get() == H.ctx().get() ? H : H.with_ctx(map.ctx);
  // H(F) - H = 0 iff num(H.F) * den(H) - num(H) * den(H.F) = 0.
  RationalFunction composed = compose_quotient(Hm.num(), Hm.den(), args);
  Polynomial diff = difference_numerator(composed, Hm);
  if (diff.is_zero()) return true;
  if (witness) *witness = diff;
  return false;
}

}  // namespace ivp
