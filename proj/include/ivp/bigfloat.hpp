#pragma once

#include <mpfr.h>

#include <string>
#include <vector>

#include "ivp/polynomial.hpp"
#include "ivp/rational.hpp"

namespace ivp {

/// Arbitrary-precision binary float (MPFR, round-to-nearest). Every value
/// carries the thread-local working precision that was active when it was
/// created; operations allocate results at the current working precision.
class Real {
public:
  static mpfr_prec_t working_prec();
  static void set_working_prec(mpfr_prec_t bits);

  /// Scoped precision override.
  class PrecGuard {
  public:
    explicit PrecGuard(mpfr_prec_t bits) : saved_(working_prec()) { set_working_prec(bits); }
    ~PrecGuard() { set_working_prec(saved_); }

  private:
    mpfr_prec_t saved_;
  };

  Real() { mpfr_init2(v_, working_prec()); mpfr_set_zero(v_, 1); }
  Real(long n) : Real() { mpfr_set_si(v_, n, MPFR_RNDN); }
  Real(int n) : Real(static_cast<long>(n)) {}
  Real(double d) : Real() { mpfr_set_d(v_, d, MPFR_RNDN); }
  explicit Real(const Rat& q) : Real() { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }

  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  Real operator-() const { Real r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  bool is_zero() const { return mpfr_zero_p(v_); }
  int sgn() const { return mpfr_sgn(v_); }

  Real abs() const { Real r; mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }
  Real sqrt() const { Real r; mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r; }
  Real log() const { Real r; mpfr_log(r.v_, v_, MPFR_RNDN); return r; }

  static Real pi() { Real r; mpfr_const_pi(r.raw(), MPFR_RNDN); return r; }
  /// 2^e as a Real; handy for tolerance thresholds like 2^-200.
  static Real pow2(long e) { Real r(1); mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN); return r; }
  /// 10^e, for decimal tolerances like 1e-25 evaluated in binary precision.
  static Real pow10(long e) {
    Real r;
    mpfr_set_si(r.v_, 10, MPFR_RNDN);
    mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 20) const;

private:
  mpfr_t v_;
};

inline Real sin(const Real& a) { Real r; mpfr_sin(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real cos(const Real& a) { Real r; mpfr_cos(r.raw(), a.raw(), MPFR_RNDN); return r; }
inline Real hypot(const Real& a, const Real& b) {
  Real r;
  mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

/// Complex number over Real.
struct Complex {
  Real re, im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long n) : re(n) {}
  Complex(int n) : re(long(n)) {}
  Complex(double d) : re(d) {}
  explicit Complex(const Rat& q) : re(q) {}

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real n = b.norm();
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

  Complex conj() const { return {re, -im}; }
  Real norm() const { return re * re + im * im; }  // |z|^2
  Real abs() const { return hypot(re, im); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

template <>
inline Real coeff_cast<Real>(const Rat& q) { return Real(q); }
template <>
inline Complex coeff_cast<Complex>(const Rat& q) { return Complex(q); }

using CVec = std::vector<Complex>;
using CMat = std::vector<std::vector<Complex>>;

/// Max-norm of a complex vector.
Real max_abs(const CVec& v);

/// Solves M x = b by Gaussian elimination with full pivoting. Pivots below
/// `rank_tol` times the largest pivot are treated as rank deficiency: the
/// corresponding free unknowns are set to zero and the (assumed consistent)
/// equations are dropped. Returns false only when M is the zero matrix.
bool solve_linear(CMat M, CVec b, CVec& x, const Real& rank_tol);

/// All roots of a dense univariate polynomial (ascending complex coefficients)
/// by the Durand-Kerner iteration at the working precision.
CVec poly_roots(const CVec& coeffs, int max_iter = 500);

/// det(M) by LU with partial pivoting.
Complex determinant(CMat M);

/// Coefficients of det(lambda I - M), ascending, computed by the
/// Faddeev-LeVerrier recurrence (exact traces, no pivoting).
CVec char_poly(const CMat& M);

}  // namespace ivp
