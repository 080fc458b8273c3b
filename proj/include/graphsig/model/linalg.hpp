#pragma once

#include "graphsig/common.hpp"

#include <string>
#include <string_view>

namespace graphsig::model {

/// Cholesky factorization of a symmetric positive-definite matrix.
///
/// Construction fails with SingularMatrixError (naming the matrix) when a
/// pivot falls below kRelativePivotTolerance times the largest diagonal
/// entry. Only the lower triangle of the input is read.
class SpdFactor {
 public:
  static constexpr double kRelativePivotTolerance = 1e-10;

  SpdFactor(const Matrix& a, std::string_view name);

  [[nodiscard]] int dim() const { return static_cast<int>(llt_.rows()); }
  [[nodiscard]] Vector solve(const Vector& b) const { return llt_.solve(b); }
  [[nodiscard]] Matrix solve(const Matrix& b) const { return llt_.solve(b); }

  /// v^T A^{-1} v
  [[nodiscard]] double inverse_quadratic(const Vector& v) const;

  [[nodiscard]] Matrix lower() const { return llt_.matrixL(); }
  [[nodiscard]] const std::string& name() const { return name_; }

 private:
  Eigen::LLT<Matrix> llt_;
  std::string name_;
};

/// Absolute symmetry check scaled by max(1, max |a_ij|).
bool is_symmetric(const Matrix& a, double tol);

}  // namespace graphsig::model
