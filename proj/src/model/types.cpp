#include "graphsig/model/types.hpp"

#include <cmath>
#include <sstream>

namespace graphsig::model {

void check_probability_vector(const Vector& p, std::string_view what) {
  if (p.size() == 0) throw Error(std::string(what) + ": empty probability vector");
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i)) || p(i) < 0.0 || p(i) > 1.0) {
      std::ostringstream os;
      os << what << ": entry " << i + 1 << " = " << p(i) << " is not a probability";
      throw Error(os.str());
    }
  }
  const double total = p.sum();
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": entries sum to " << total << ", not 1";
    throw Error(os.str());
  }
}

GaussianClassModel::GaussianClassModel(Vector priors, std::vector<Vector> means, Matrix covariance)
    : priors_(std::move(priors)), means_(std::move(means)), covariance_(std::move(covariance)) {
  const auto m = priors_.size();
  if (m < 2) throw Error("model needs at least two classes");
  check_probability_vector(priors_, "priors");
  if (priors_.minCoeff() <= 0.0) throw Error("priors: every class needs a positive prior");
  if (static_cast<Eigen::Index>(means_.size()) != m) {
    throw Error("model: " + std::to_string(means_.size()) + " mean vectors for " +
                std::to_string(m) + " classes");
  }
  if (covariance_.rows() < 1 || covariance_.rows() != covariance_.cols()) {
    throw Error("covariance must be a non-empty square matrix");
  }
  for (std::size_t i = 0; i < means_.size(); ++i) {
    if (means_[i].size() != covariance_.rows()) {
      throw Error("mean " + std::to_string(i + 1) + " has length " +
                  std::to_string(means_[i].size()) + ", expected " +
                  std::to_string(covariance_.rows()));
    }
  }
  if (!is_symmetric(covariance_, 1e-12)) throw Error("covariance is not symmetric");
  factor_ = std::make_shared<const SpdFactor>(covariance_, "feature covariance C");
}

GaussianClassModel GaussianClassModel::isotropic(Vector priors, std::vector<Vector> means,
                                                 double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error("sigma must be positive");
  if (means.empty()) throw Error("model: no means");
  const auto f = means.front().size();
  return GaussianClassModel(std::move(priors), std::move(means),
                            Matrix::Identity(f, f) * sigma * sigma);
}

TransitionMatrix::TransitionMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw Error("transition matrix must be square and non-empty");
  }
  for (Eigen::Index r = 0; r < entries_.rows(); ++r) {
    check_probability_vector(entries_.row(r).transpose(),
                             "transition matrix row " + std::to_string(r + 1));
  }
}

TransitionMatrix TransitionMatrix::identity(int order) {
  return TransitionMatrix(Matrix::Identity(order, order));
}

double TransitionMatrix::average_homophily(const Vector& priors) const {
  return priors.dot(entries_.diagonal());
}

DegreePriors::DegreePriors(Vector default_priors) : default_(std::move(default_priors)) {
  check_probability_vector(default_, "degree priors (default)");
}

void DegreePriors::set(const DegreeKey& key, Vector priors) {
  if (priors.size() != default_.size()) throw Error("degree priors: class count mismatch");
  check_probability_vector(priors, "degree priors for degree " + to_string(key));
  table_[key] = std::move(priors);
}

const Vector& DegreePriors::at(const DegreeKey& key) const {
  const auto it = table_.find(key);
  return it == table_.end() ? default_ : it->second;
}

DeflectionTable::DeflectionTable(DegreeKey degree, Matrix values)
    : degree_(std::move(degree)), values_(std::move(values)) {
  if (values_.rows() != values_.cols()) throw Error("deflection table must be square");
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    if (values_(i, i) != 0.0) throw Error("deflection table has a nonzero diagonal");
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
      if (!(values_(i, j) >= 0.0)) throw Error("deflection table has a negative entry");
      if (values_(i, j) != values_(j, i)) throw Error("deflection table is not symmetric");
    }
  }
}

}  // namespace graphsig::model
