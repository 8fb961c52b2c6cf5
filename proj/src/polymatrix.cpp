#include "ivp/polymatrix.hpp"

#include <map>

namespace ivp {

PolyMatrix PolyMatrix::identity(std::size_t n, const VarCtx& ctx) {
  PolyMatrix m(n, n, ctx);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Polynomial::constant(ctx, Rat(1));
  return m;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw Error("polymatrix: shape mismatch in product");
  PolyMatrix r(a.rows(), b.cols(), a.ctx());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b.at(k, j).is_zero()) continue;
        r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  return r;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("polymatrix: shape mismatch");
  PolyMatrix r(a.rows(), a.cols(), a.ctx());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

namespace {

Polynomial det_rec(const PolyMatrix& m, std::size_t row, std::uint32_t colmask,
                   std::map<std::uint32_t, Polynomial>& memo) {
  auto it = memo.find(colmask);
  if (it != memo.end()) return it->second;
  Polynomial det(m.ctx());
  int sign = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!(colmask & (1u << j))) continue;
    const Polynomial& e = m.at(row, j);
    if (!e.is_zero()) {
      std::uint32_t sub = colmask & ~(1u << j);
      Polynomial minor = sub == 0 ? Polynomial::constant(m.ctx(), Rat(1))
                                  : det_rec(m, row + 1, sub, memo);
      Polynomial contrib = e * minor;
      det = sign > 0 ? det + contrib : det - contrib;
    }
    sign = -sign;
  }
  memo.emplace(colmask, det);
  return det;
}

}  // namespace

Polynomial PolyMatrix::det_cofactor() const {
  if (rows_ != cols_) throw Error("determinant of non-square matrix");
  if (rows_ == 0) return Polynomial::constant(ctx_, Rat(1));
  if (rows_ > 20) throw Error("cofactor determinant: matrix too large");
  // Memo keyed by the set of live columns; the expansion row is implied by
  // the popcount, so one shared map is enough.
  std::uint32_t full = (1u << rows_) - 1;
  std::map<std::uint32_t, Polynomial> memo;
  return det_rec(*this, 0, full, memo);
}

Polynomial PolyMatrix::det_bareiss() const {
  if (rows_ != cols_) throw Error("determinant of non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return Polynomial::constant(ctx_, Rat(1));
  std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial(ctx_)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = at(i, j);

  Polynomial prev = Polynomial::constant(ctx_, Rat(1));
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return Polynomial(ctx_);  // zero column: det 0
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = Polynomial::try_divide(num, prev);
        if (!q) throw Error("bareiss: inexact division");
        m[i][j] = std::move(*q);
      }
      m[i][k] = Polynomial(ctx_);
    }
    prev = m[k][k];
  }
  Polynomial det = m[n - 1][n - 1];
  return sign > 0 ? det : -det;
}

RFMatrix rf_mul(const RFMatrix& a, const RFMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b[0].size();
  RFMatrix r(n, std::vector<RationalFunction>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (b[l][j].is_zero()) continue;
        r[i][j] = r[i][j] + a[i][l] * b[l][j];
      }
    }
  return r;
}

RFMatrix rf_sub(const RFMatrix& a, const RFMatrix& b) {
  RFMatrix r(a.size(), std::vector<RationalFunction>(a[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

namespace {
RationalFunction rf_det_rec(const RFMatrix& m, std::size_t row, std::uint32_t colmask) {
  RationalFunction det;
  int sign = 1;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (!(colmask & (1u << j))) continue;
    const RationalFunction& e = m[row][j];
    if (!e.is_zero()) {
      std::uint32_t sub = colmask & ~(1u << j);
      RationalFunction minor =
          sub == 0 ? RationalFunction(Polynomial::constant(e.ctx(), Rat(1))) : rf_det_rec(m, row + 1, sub);
      RationalFunction contrib = e * minor;
      det = sign > 0 ? det + contrib : det - contrib;
    }
    sign = -sign;
  }
  return det;
}
}  // namespace

RationalFunction rf_det(const RFMatrix& m) {
  if (m.empty()) throw Error("determinant of empty matrix");
  return rf_det_rec(m, 0, (1u << m.size()) - 1);
}

}  // namespace ivp
