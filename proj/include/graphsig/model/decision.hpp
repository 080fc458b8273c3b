#pragma once

#include "graphsig/model/types.hpp"

#include <string>
#include <vector>

namespace graphsig::model {

struct DiagnosticCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ModelDiagnostics {
  std::vector<DiagnosticCheck> checks;
  /// pi_m p_{m,l} == pi_l p_{l,m} within 1e-9. Failing this is a flag, not
  /// an error: such models are usable by the neighborhood sampler but not
  /// by the DC-SBM generator.
  bool balanced = false;

  [[nodiscard]] bool ok() const;
};

inline constexpr double kDetailedBalanceTolerance = 1e-9;

/// Throws on M mismatch between model and P.
ModelDiagnostics validate_model(const GaussianClassModel& model, const TransitionMatrix& p);

TransitionMatrix khop_transition(const TransitionMatrix& p, int k);

/// Standard Gaussian tail probability Q(a) = P(N(0,1) > a).
double q_function(double a);

/// gamma(m,l) = (nu_m - nu_l)^T R^{-1} (nu_m - nu_l).
DeflectionTable pairwise_deflection(const std::vector<Vector>& means, const SpdFactor& pooled,
                                    DegreeKey degree = {0});
DeflectionTable pairwise_deflection(const std::vector<Vector>& means, const Matrix& pooled_cov,
                                    DegreeKey degree = {0});

/// Union bound on the misclassification probability (exact for M = 2):
///   sum_m pi_m sum_{l != m} Q( sqrt(g)/2 + log(pi_m/pi_l)/sqrt(g) ).
/// Throws when two classes with nonzero priors have zero deflection.
double error_upper_bound(const DeflectionTable& deflections, const Vector& priors);

/// Same sum, but a zero-deflection pair contributes its limiting value
/// (Q(0) = 1/2 for equal priors, 0 or 1 otherwise) instead of throwing.
/// Used as an optimization objective, where such points are legitimate.
double error_upper_bound_limit(const DeflectionTable& deflections, const Vector& priors);

/// Means at the vertices of a regular (M-1)-simplex centred at the origin,
/// occupying the first M-1 coordinates, with every pairwise deflection
/// under C = sigma^2 I equal to gamma0.
std::vector<Vector> simplex_means(int num_classes, int feature_dim, double gamma0, double sigma);

}  // namespace graphsig::model
