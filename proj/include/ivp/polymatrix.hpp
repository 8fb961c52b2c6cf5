#pragma once

#include <vector>

#include "ivp/polynomial.hpp"
#include "ivp/ratfunc.hpp"

namespace ivp {

/// Dense rectangular matrix of polynomials over one context.
class PolyMatrix {
public:
  PolyMatrix(std::size_t rows, std::size_t cols, const VarCtx& ctx)
      : rows_(rows), cols_(cols), ctx_(ctx), e_(rows * cols, Polynomial(ctx)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const VarCtx& ctx() const { return ctx_; }

  Polynomial& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Polynomial& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  static PolyMatrix identity(std::size_t n, const VarCtx& ctx);

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);

  /// Determinant by cofactor expansion with column-mask memoization.
  Polynomial det_cofactor() const;
  /// Determinant by fraction-free (Bareiss) elimination; exact divisions only.
  Polynomial det_bareiss() const;

private:
  std::size_t rows_, cols_;
  VarCtx ctx_;
  std::vector<Polynomial> e_;
};

/// Matrix of rational functions (used for the Lax identity checks).
using RFMatrix = std::vector<std::vector<RationalFunction>>;

RFMatrix rf_mul(const RFMatrix& a, const RFMatrix& b);
RFMatrix rf_sub(const RFMatrix& a, const RFMatrix& b);
RationalFunction rf_det(const RFMatrix& m);

}  // namespace ivp
