#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace graphsig {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Every failure raised by the library is an Error (or a subclass).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix that was required to be symmetric positive definite was not.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Degree profile (d_1, ..., d_K) used to index degree-dependent quantities.
/// A plain node degree is the one-element profile {d}.
using DegreeKey = std::vector<int>;

std::string to_string(const DegreeKey& key);

}  // namespace graphsig
