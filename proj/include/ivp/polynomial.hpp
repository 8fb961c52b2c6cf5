#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivp/context.hpp"
#include "ivp/monomial.hpp"
#include "ivp/rational.hpp"

namespace ivp {

struct Term {
  Monomial m;
  Rat c;
};

/// Sparse multivariate polynomial over exact rationals.
///
/// Canonical form: terms sorted ascending under grevlex with the natural
/// variable order (leading term last), no zero coefficients. Two polynomials
/// are equal iff their aligned term sequences are equal. Values are immutable
/// in spirit: every operation returns a fresh polynomial, so sharing across
/// threads is safe.
class Polynomial {
public:
  static constexpr long kDegNegInf = std::numeric_limits<long>::min();

  Polynomial() : ctx_(VarContext::make({})) {}
  explicit Polynomial(VarCtx ctx) : ctx_(std::move(ctx)) {}

  static Polynomial constant(VarCtx ctx, Rat c);
  static Polynomial variable(const VarCtx& ctx, std::size_t var);
  static Polynomial monomial(VarCtx ctx, Monomial m, Rat c);
  /// Normalizes arbitrary term soup: sorts, merges equal monomials, drops zeros.
  static Polynomial from_terms(VarCtx ctx, std::vector<Term> terms);

  const VarCtx& ctx() const { return ctx_; }
  std::size_t nvars() const { return ctx_->size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rat constant_value() const;

  /// Leading term under the canonical (grevlex, natural) order.
  const Term& leading() const { return terms_.back(); }

  long degree(std::size_t var) const;
  long total_degree() const;
  /// Number of terms with positive degree in `var`.
  std::size_t terms_with_var(std::size_t var) const;

  Polynomial with_ctx(const VarCtx& target) const;
  /// Aligns both operands onto the union context.
  static void align(Polynomial& a, Polynomial& b);

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator+=(const Polynomial& o) { *this = *this + o; return *this; }
  Polynomial& operator-=(const Polynomial& o) { *this = *this - o; return *this; }
  Polynomial& operator*=(const Polynomial& o) { *this = *this * o; return *this; }

  friend Polynomial operator*(const Polynomial& a, const Rat& s);
  friend Polynomial operator*(const Rat& s, const Polynomial& a) { return a * s; }
  friend Polynomial operator+(const Polynomial& a, const Rat& s) { return a + constant(a.ctx_, s); }
  friend Polynomial operator-(const Polynomial& a, const Rat& s) { return a - constant(a.ctx_, s); }

  Polynomial mul_term(const Monomial& m, const Rat& c) const;
  Polynomial pow(unsigned long n) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Exact evaluation; `point` must bind every context variable in order.
  Rat eval(std::span<const Rat> point) const;
  template <class T>
  T eval_t(std::span<const T> point) const;  // defined below; needs coeff_cast<T>

  Polynomial derivative(std::size_t var) const;

  /// Substitutes args[i] for variable i; all args share one context, which
  /// becomes the result context. args.size() must equal nvars().
  static Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& args);

  /// Exact quotient a/b, or nullopt when b does not divide a.
  static std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);

  /// Positive rational c with p = c * pp, pp having coprime integer
  /// coefficients. content of 0 is 0.
  Rat content() const;
  Polynomial primitive_part() const;
  /// Scales so the leading coefficient under `ord` is 1.
  Polynomial monic(const TermOrder& ord = TermOrder::grevlex()) const;
  /// Index of the leading term under an arbitrary order.
  std::size_t leading_index(const TermOrder& ord) const;

  /// Ascending sequence check used by debug assertions and tests.
  bool well_formed() const;

private:
  VarCtx ctx_;
  std::vector<Term> terms_;

  friend class GeoBucket;
  static Polynomial from_sorted(VarCtx ctx, std::vector<Term> terms) {
    Polynomial p(std::move(ctx));
    p.terms_ = std::move(terms);
    return p;
  }
};

/// Coefficients of p viewed as a univariate polynomial in `var`; index =
/// exponent of `var`, entries over the same context with `var` removed from
/// the exponents.
std::vector<Polynomial> coeffs_in_var(const Polynomial& p, std::size_t var);

/// Re-contexts p onto `target`, which may omit variables p does not use.
Polynomial drop_to_ctx(const Polynomial& p, const VarCtx& target);

/// Coefficient conversion used by generic evaluation. Specialized for the
/// numeric tower (Rat, double, Real, Complex).
template <class T>
T coeff_cast(const Rat& q);

template <>
inline Rat coeff_cast<Rat>(const Rat& q) { return q; }
template <>
inline double coeff_cast<double>(const Rat& q) { return q.get_d(); }

template <class T>
T Polynomial::eval_t(std::span<const T> point) const {
  if (point.size() != nvars()) throw Error("eval: point arity mismatch");
  std::vector<std::vector<T>> pows(nvars());
  for (std::size_t v = 0; v < nvars(); ++v) {
    long d = degree(v);
    if (d == kDegNegInf) d = 0;
    pows[v].reserve(d + 1);
    pows[v].push_back(T(1));
    for (long k = 1; k <= d; ++k) pows[v].push_back(pows[v].back() * point[v]);
  }
  T acc(0);
  for (const auto& t : terms()) {
    T prod = coeff_cast<T>(t.c);
    for (std::size_t v = 0; v < nvars(); ++v)
      if (t.m[v]) prod = prod * pows[v][t.m[v]];
    acc = acc + prod;
  }
  return acc;
}

/// Geobucket accumulator: keeps pending terms in buckets of geometrically
/// growing size so long chains of additions (multiplication, reduction) avoid
/// quadratic merging. Streams passed in must be sorted ascending under the
/// bucket's order.
class GeoBucket {
public:
  GeoBucket(VarCtx ctx, TermOrder ord);

  void add(std::vector<Term> stream);
  void add(const Polynomial& p);
  /// Adds (scale_m, scale_c) * stream.
  void add_scaled(std::span<const Term> stream, const Monomial& scale_m, const Rat& scale_c);

  /// Extracts the current leading term. False when empty.
  bool pop_leading(Term& out);

  bool empty();

  Polynomial finalize();

  std::uint64_t live_terms() const { return live_; }

private:
  VarCtx ctx_;
  TermOrder ord_;
  std::vector<std::vector<Term>> buckets_;
  std::uint64_t live_ = 0;

  std::vector<Term> merge(std::vector<Term> a, std::vector<Term> b);
  void place(std::vector<Term> stream);
};

}  // namespace ivp
