#include "ivp/ratfunc.hpp"

#include "ivp/poly_io.hpp"

namespace ivp {

RationalFunction::RationalFunction(Polynomial num, Polynomial den, bool normalized)
    : num_(std::move(num)), den_(std::move(den)) {
  Polynomial::align(num_, den_);
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.ctx(), Rat(1));
    return;
  }
  if (!normalized) {
    if (den_.is_constant()) {
      num_ = num_ * (1 / den_.constant_value());
      den_ = Polynomial::constant(num_.ctx(), Rat(1));
      return;
    }
    Polynomial g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *Polynomial::try_divide(num_, g);
      den_ = *Polynomial::try_divide(den_, g);
    }
    const Rat& lc = den_.leading().c;
    if (!is_one(lc)) {
      Rat inv = 1 / lc;
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }
}

RationalFunction RationalFunction::operator-() const {
  return RationalFunction(-num_, den_, true);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // Cancel the shared denominator part first: b = g b1, d = g d1.
  Polynomial g = poly_gcd(a.den_, b.den_);
  if (g.is_constant()) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  Polynomial d1 = *Polynomial::try_divide(a.den_, g);
  Polynomial d2 = *Polynomial::try_divide(b.den_, g);
  return RationalFunction(a.num_ * d2 + b.num_ * d1, a.den_ * d2);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction(Polynomial(a.ctx()));
  // Cross-cancel before multiplying.
  Polynomial g1 = poly_gcd(a.num_, b.den_);
  Polynomial g2 = poly_gcd(b.num_, a.den_);
  Polynomial n1 = g1.is_constant() ? a.num_ : *Polynomial::try_divide(a.num_, g1);
  Polynomial d2 = g1.is_constant() ? b.den_ : *Polynomial::try_divide(b.den_, g1);
  Polynomial n2 = g2.is_constant() ? b.num_ : *Polynomial::try_divide(b.num_, g2);
  Polynomial d1 = g2.is_constant() ? a.den_ : *Polynomial::try_divide(a.den_, g2);
  return RationalFunction(n1 * n2, d1 * d2);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
  return a * RationalFunction(b.den_, b.num_, false);
}

bool RationalFunction::operator==(const RationalFunction& o) const {
  return (num_ * o.den_) == (o.num_ * den_);
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  Polynomial dn = num_.derivative(var);
  Polynomial dd = den_.derivative(var);
  if (dd.is_zero()) return RationalFunction(dn, den_);
  return RationalFunction(dn * den_ - num_ * dd, den_ * den_);
}

std::string RationalFunction::to_string() const {
  if (den_.is_constant() && is_one(den_.constant_value())) return poly_to_string(num_);
  return "(" + poly_to_string(num_) + ") / (" + poly_to_string(den_) + ")";
}

namespace {

struct PowerCache {
  std::vector<std::vector<Polynomial>> num_pows, den_pows;

  PowerCache(const std::vector<RationalFunction>& args, const std::vector<long>& profile,
             const VarCtx& target) {
    num_pows.resize(args.size());
    den_pows.resize(args.size());
    for (std::size_t v = 0; v < args.size(); ++v) {
      long m = profile[v];
      num_pows[v].reserve(m + 1);
      den_pows[v].reserve(m + 1);
      num_pows[v].push_back(Polynomial::constant(target, Rat(1)));
      den_pows[v].push_back(Polynomial::constant(target, Rat(1)));
      for (long k = 1; k <= m; ++k) {
        num_pows[v].push_back(num_pows[v].back() * args[v].num());
        den_pows[v].push_back(den_pows[v].back() * args[v].den());
      }
    }
  }

  // sum over terms of p: c * prod_v num_v^e_v * den_v^(profile_v - e_v)
  Polynomial accumulate(const Polynomial& p, const std::vector<long>& profile, const VarCtx& target) {
    GeoBucket acc(target, TermOrder::grevlex());
    for (const auto& t : p.terms()) {
      Polynomial prod = Polynomial::constant(target, t.c);
      for (std::size_t v = 0; v < profile.size(); ++v) {
        long e = t.m[v];
        if (e) prod = prod * num_pows[v][e];
        if (profile[v] - e) prod = prod * den_pows[v][profile[v] - e];
      }
      acc.add(prod);
    }
    return acc.finalize();
  }
};

std::vector<long> degree_profile(const Polynomial& p, std::size_t nargs) {
  std::vector<long> prof(nargs, 0);
  for (std::size_t v = 0; v < nargs; ++v) prof[v] = std::max<long>(p.degree(v), 0);
  return prof;
}

}  // namespace

RationalFunction compose_poly(const Polynomial& p, const std::vector<RationalFunction>& args) {
  if (args.size() != p.nvars()) throw Error("compose: arity mismatch with variable count");
  VarCtx target = args.empty() ? p.ctx() : args[0].ctx();
  for (const auto& a : args)
    if (a.ctx().get() != target.get()) throw Error("compose: args must share a context");
  auto prof = degree_profile(p, args.size());
  PowerCache cache(args, prof, target);
  Polynomial n = cache.accumulate(p, prof, target);
  Polynomial d = Polynomial::constant(target, Rat(1));
  for (std::size_t v = 0; v < args.size(); ++v)
    if (prof[v]) d = d * cache.den_pows[v][prof[v]];
  return RationalFunction(std::move(n), std::move(d));
}

RationalFunction compose_quotient(const Polynomial& n, const Polynomial& d,
                                  const std::vector<RationalFunction>& args) {
  if (args.size() != n.nvars() || args.size() != d.nvars())
    throw Error("compose: arity mismatch with variable count");
  VarCtx target = args.empty() ? n.ctx() : args[0].ctx();
  auto pn = degree_profile(n, args.size());
  auto pd = degree_profile(d, args.size());
  std::vector<long> prof(args.size());
  for (std::size_t v = 0; v < args.size(); ++v) prof[v] = std::max(pn[v], pd[v]);
  PowerCache cache(args, prof, target);
  // Both parts sit over the same product of denominator powers, which
  // therefore cancels without ever being expanded.
  Polynomial N = cache.accumulate(n, prof, target);
  Polynomial D = cache.accumulate(d, prof, target);
  return RationalFunction(std::move(N), std::move(D));
}

Polynomial difference_numerator(const RationalFunction& a, const RationalFunction& b) {
  return a.num() * b.den() - b.num() * a.den();
}

}  // namespace ivp
