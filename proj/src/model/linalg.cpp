#include "graphsig/model/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace graphsig {

std::string to_string(const DegreeKey& key) {
  std::ostringstream os;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) os << ' ';
    os << key[i];
  }
  return os.str();
}

}  // namespace graphsig

namespace graphsig::model {

SpdFactor::SpdFactor(const Matrix& a, std::string_view name) : name_(name) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw SingularMatrixError("matrix '" + name_ + "' is not a non-empty square matrix");
  }
  if (!a.allFinite()) {
    throw SingularMatrixError("matrix '" + name_ + "' has non-finite entries");
  }
  llt_.compute(a);
  const double max_diag = a.diagonal().cwiseAbs().maxCoeff();
  if (llt_.info() != Eigen::Success || max_diag <= 0.0) {
    throw SingularMatrixError("matrix '" + name_ + "' is not positive definite");
  }
  const Vector pivots = Matrix(llt_.matrixL()).diagonal().array().square();
  if (pivots.minCoeff() <= kRelativePivotTolerance * max_diag) {
    std::ostringstream os;
    os << "matrix '" << name_ << "' is numerically singular (smallest pivot " << pivots.minCoeff()
       << ", largest diagonal " << max_diag << ")";
    throw SingularMatrixError(os.str());
  }
}

double SpdFactor::inverse_quadratic(const Vector& v) const {
  // ||L^{-1} v||^2 keeps the result nonnegative.
  const Vector half = llt_.matrixL().solve(v);
  return half.squaredNorm();
}

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace graphsig::model
