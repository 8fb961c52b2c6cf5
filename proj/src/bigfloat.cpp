#include "ivp/bigfloat.hpp"

#include <algorithm>

namespace ivp {

namespace {
thread_local mpfr_prec_t g_working_prec = 256;
}

mpfr_prec_t Real::working_prec() { return g_working_prec; }
void Real::set_working_prec(mpfr_prec_t bits) { g_working_prec = std::max<mpfr_prec_t>(bits, 24); }

std::string Real::to_string(int digits) const {
  char* s = nullptr;
  // %.*Rg is locale-independent in MPFR.
  int n = mpfr_asprintf(&s, "%.*Rg", digits, v_);
  if (n < 0) return "nan";
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

Real max_abs(const CVec& v) {
  Real m(0);
  for (const auto& z : v) {
    Real a = z.abs();
    if (a > m) m = a;
  }
  return m;
}

bool solve_linear(CMat M, CVec b, CVec& x, const Real& rank_tol) {
  std::size_t n = M.size();
  std::vector<std::size_t> col_of(n);
  for (std::size_t i = 0; i < n; ++i) col_of[i] = i;

  // Full pivoting; row swaps applied to b, column swaps tracked.
  Real biggest(0);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    Real best(0);
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        Real a = M[i][j].abs();
        if (a > best) {
          best = a;
          pr = i;
          pc = j;
        }
      }
    if (k == 0) biggest = best;
    if (best.is_zero() || (k > 0 && best < rank_tol * biggest)) break;
    rank = k + 1;
    std::swap(M[k], M[pr]);
    std::swap(b[k], b[pr]);
    if (pc != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(M[i][k], M[i][pc]);
      std::swap(col_of[k], col_of[pc]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (M[i][k].is_zero()) continue;
      Complex f = M[i][k] / M[k][k];
      M[i][k] = Complex(0);
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = M[i][j] - f * M[k][j];
      b[i] = b[i] - f * b[k];
    }
  }
  if (rank == 0) return false;

  // Back substitution; unknowns beyond the rank cutoff stay zero.
  CVec y(n, Complex(0));
  for (std::size_t k = rank; k-- > 0;) {
    Complex s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s = s - M[k][j] * y[j];
    y[k] = s / M[k][k];
  }
  x.assign(n, Complex(0));
  for (std::size_t k = 0; k < n; ++k) x[col_of[k]] = y[k];
  return true;
}

CVec poly_roots(const CVec& coeffs, int max_iter) {
  CVec c = coeffs;
  while (!c.empty() && c.back().abs().is_zero()) c.pop_back();
  if (c.size() <= 1) return {};
  std::size_t deg = c.size() - 1;
  // Make monic.
  for (std::size_t i = 0; i < deg; ++i) c[i] = c[i] / c[deg];
  c[deg] = Complex(1);

  // Cauchy bound for initial radius.
  Real bound(0);
  for (std::size_t i = 0; i < deg; ++i) {
    Real a = c[i].abs();
    if (a > bound) bound = a;
  }
  Real radius = Real(1) + bound;

  CVec roots(deg);
  Real pi = Real::pi();
  for (std::size_t k = 0; k < deg; ++k) {
    Real theta = (Real(2) * pi * Real(long(k))) / Real(long(deg)) + Real(0.4);
    roots[k] = Complex(radius * cos(theta), radius * sin(theta));
  }

  auto eval = [&](const Complex& z) {
    Complex acc = c[deg];
    for (std::size_t i = deg; i-- > 0;) acc = acc * z + c[i];
    return acc;
  };

  Real tol = Real::pow2(-(long(Real::working_prec()) - 24));
  for (int iter = 0; iter < max_iter; ++iter) {
    Real worst(0);
    for (std::size_t k = 0; k < deg; ++k) {
      Complex denom(1);
      for (std::size_t j = 0; j < deg; ++j) {
        if (j == k) continue;
        denom = denom * (roots[k] - roots[j]);
      }
      if (denom.is_zero()) {
        roots[k] = roots[k] + Complex(Real::pow2(-20), Real::pow2(-21));
        worst = Real(1);
        continue;
      }
      Complex delta = eval(roots[k]) / denom;
      roots[k] = roots[k] - delta;
      Real d = delta.abs();
      if (d > worst) worst = d;
    }
    Real scale = Real(1) + max_abs(roots);
    if (worst < tol * scale) break;
  }
  return roots;
}

Complex determinant(CMat M) {
  std::size_t n = M.size();
  Complex det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    Real best = M[k][k].abs();
    for (std::size_t i = k + 1; i < n; ++i) {
      Real a = M[i][k].abs();
      if (a > best) {
        best = a;
        p = i;
      }
    }
    if (best.is_zero()) return Complex(0);
    if (p != k) {
      std::swap(M[k], M[p]);
      det = -det;
    }
    det = det * M[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex f = M[i][k] / M[k][k];
      for (std::size_t j = k; j < n; ++j) M[i][j] = M[i][j] - f * M[k][j];
    }
  }
  return det;
}

CVec char_poly(const CMat& M) {
  std::size_t n = M.size();
  // Faddeev-LeVerrier: M_1 = M, c_{n-1} = -tr; M_{k+1} = M(M_k + c I).
  CVec coeffs(n + 1, Complex(0));
  coeffs[n] = Complex(1);
  CMat Mk = M;
  Complex c;
  for (std::size_t k = 1; k <= n; ++k) {
    Complex tr(0);
    for (std::size_t i = 0; i < n; ++i) tr = tr + Mk[i][i];
    c = -(tr / Complex(long(k)));
    coeffs[n - k] = c;
    if (k == n) break;
    for (std::size_t i = 0; i < n; ++i) Mk[i][i] = Mk[i][i] + c;
    CMat next(n, CVec(n, Complex(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (M[i][l].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] + M[i][l] * Mk[l][j];
      }
    Mk = std::move(next);
  }
  return coeffs;
}

}  // namespace ivp
