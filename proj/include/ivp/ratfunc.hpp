#pragma once

#include <string>
#include <vector>

#include "ivp/gcd.hpp"
#include "ivp/polynomial.hpp"

namespace ivp {

/// Quotient of polynomials, always fully cancelled, denominator monic under
/// the grevlex natural order. Zero is 0/1.
class RationalFunction {
public:
  RationalFunction() : num_(), den_(Polynomial::constant(num_.ctx(), Rat(1))) {}
  /* implicit */ RationalFunction(Polynomial p)
      : num_(std::move(p)), den_(Polynomial::constant(num_.ctx(), Rat(1))) {}
  RationalFunction(Polynomial num, Polynomial den, bool normalized = false);

  static RationalFunction constant(const VarCtx& ctx, Rat c) {
    return RationalFunction(Polynomial::constant(ctx, std::move(c)));
  }
  static RationalFunction variable(const VarCtx& ctx, std::size_t v) {
    return RationalFunction(Polynomial::variable(ctx, v));
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const VarCtx& ctx() const { return num_.ctx(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

  /// Exact equality as rational functions (by cross multiplication).
  bool operator==(const RationalFunction& o) const;
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  RationalFunction with_ctx(const VarCtx& target) const {
    return RationalFunction(num_.with_ctx(target), den_.with_ctx(target), true);
  }

  /// Quotient-rule derivative, cancelled.
  RationalFunction derivative(std::size_t var) const;

  template <class T>
  T eval_t(std::span<const T> point) const {
    T d = den_.eval_t<T>(point);
    if (d == T(0)) throw SingularityHit("denominator vanished at evaluation point");
    return num_.eval_t<T>(point) / d;
  }

  std::string to_string() const;

private:
  Polynomial num_, den_;
};

/// Substitutes args[i] for variable i of p; result over the args' context.
RationalFunction compose_poly(const Polynomial& p, const std::vector<RationalFunction>& args);

/// Composes a quotient n/d with args sharing one power profile, so the common
/// denominator cancels structurally and a single gcd finishes the job.
RationalFunction compose_quotient(const Polynomial& n, const Polynomial& d,
                                  const std::vector<RationalFunction>& args);

/// numerator of (a - b) over the common denominator; exact zero test for
/// identities without any gcd work.
Polynomial difference_numerator(const RationalFunction& a, const RationalFunction& b);

}  // namespace ivp
