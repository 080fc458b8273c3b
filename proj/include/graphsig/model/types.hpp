#pragma once

#include "graphsig/common.hpp"
#include "graphsig/model/linalg.hpp"

#include <map>
#include <memory>
#include <optional>

namespace graphsig::model {

/// Tolerance for probability vectors and stochastic rows.
inline constexpr double kProbabilityTolerance = 1e-12;

/// Homoscedastic Gaussian class model: M classes with priors, per-class
/// means and one shared covariance. Classes are 0-based internally.
class GaussianClassModel {
 public:
  GaussianClassModel(Vector priors, std::vector<Vector> means, Matrix covariance);

  /// Convenience for C = sigma^2 I.
  static GaussianClassModel isotropic(Vector priors, std::vector<Vector> means, double sigma);

  [[nodiscard]] int num_classes() const { return static_cast<int>(priors_.size()); }
  [[nodiscard]] int feature_dim() const { return static_cast<int>(covariance_.rows()); }
  [[nodiscard]] const Vector& priors() const { return priors_; }
  [[nodiscard]] double prior(int m) const { return priors_(m); }
  [[nodiscard]] const std::vector<Vector>& means() const { return means_; }
  [[nodiscard]] const Vector& mean(int m) const { return means_[static_cast<std::size_t>(m)]; }
  [[nodiscard]] const Matrix& covariance() const { return covariance_; }
  [[nodiscard]] const SpdFactor& covariance_factor() const { return *factor_; }

 private:
  Vector priors_;
  std::vector<Vector> means_;
  Matrix covariance_;
  std::shared_ptr<const SpdFactor> factor_;
};

/// Row-stochastic matrix of neighbor-class probabilities p_{m,l}.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(Matrix entries);

  static TransitionMatrix identity(int order);

  [[nodiscard]] int order() const { return static_cast<int>(entries_.rows()); }
  [[nodiscard]] const Matrix& entries() const { return entries_; }
  [[nodiscard]] double operator()(int m, int l) const { return entries_(m, l); }
  [[nodiscard]] Vector row(int m) const { return entries_.row(m).transpose(); }

  /// sum_m pi_m p_{m,m}
  [[nodiscard]] double average_homophily(const Vector& priors) const;

 private:
  Matrix entries_;
};

/// Class priors conditioned on a degree profile, with a default used for
/// profiles that have no table of their own.
class DegreePriors {
 public:
  explicit DegreePriors(Vector default_priors);

  void set(const DegreeKey& key, Vector priors);
  [[nodiscard]] const Vector& at(const DegreeKey& key) const;
  [[nodiscard]] const Vector& default_priors() const { return default_; }

 private:
  Vector default_;
  std::map<DegreeKey, Vector> table_;
};

/// Symmetric, zero-diagonal table of pairwise deflection coefficients.
class DeflectionTable {
 public:
  DeflectionTable(DegreeKey degree, Matrix values);

  [[nodiscard]] const DegreeKey& degree() const { return degree_; }
  [[nodiscard]] const Matrix& values() const { return values_; }
  [[nodiscard]] double operator()(int m, int l) const { return values_(m, l); }
  [[nodiscard]] int num_classes() const { return static_cast<int>(values_.rows()); }

 private:
  DegreeKey degree_;
  Matrix values_;
};

void check_probability_vector(const Vector& p, std::string_view what);

}  // namespace graphsig::model
