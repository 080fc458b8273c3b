#pragma once

#include "graphsig/aggregate/aggregate.hpp"
#include "graphsig/model/types.hpp"

#include <utility>
#include <vector>

namespace graphsig::classify {

using aggregate::RepresentationKind;

/// First and second moments of a representation, per class, at one degree
/// profile.
///
/// For the SCA kinds, `neighbor_blocks[k]` is H_k = C + sum_{m,q} pi_m
/// p^(k)_{m,q} (mu_q - mubar_{m,k})(mu_q - mubar_{m,k})^T and
/// `neighbor_means[k][m]` is mubar_{m,k} = sum_l p^(k)_{m,l} mu_l. The full
/// covariances are block diagonal: C for the focal block, d_k (C + spread)
/// for hop k.
struct MomentSummary {
  RepresentationKind kind = RepresentationKind::wsa;
  DegreeKey degree;
  std::vector<Vector> class_means;
  std::vector<Matrix> class_covariances;
  Matrix pooled_covariance;
  Vector pooling_weights;
  Matrix feature_covariance;
  std::vector<Vector> feature_means;
  std::vector<Matrix> neighbor_blocks;
  std::vector<std::vector<Vector>> neighbor_means;

  [[nodiscard]] int num_classes() const { return static_cast<int>(class_means.size()); }
  [[nodiscard]] int dim() const { return static_cast<int>(pooled_covariance.rows()); }
};

/// mubar_m = sum_l p_{m,l} mu_l for every class.
std::vector<Vector> neighbor_class_means(const model::GaussianClassModel& model, const Matrix& p);

/// S_m = sum_q p_{m,q} (mu_q - mubar_m)(mu_q - mubar_m)^T.
Matrix neighbor_spread(const model::GaussianClassModel& model, const Matrix& p, int m);

/// Conditional WSA moments given neighbor-class counts n (sum n = d):
/// mean (1 + a n_m) mu_m + a sum_{q != m} n_q mu_q, covariance (1 + a^2 d) C.
std::pair<Vector, Matrix> wsa_conditional_moments(const model::GaussianClassModel& model,
                                                  double alpha, int focal_class,
                                                  const std::vector<int>& counts);

/// Neighbor weights enter WSA moments only through their sum and sum of
/// squares (neighbor labels are i.i.d. given the focal class).
struct WsaWeightSums {
  double self_weight = 1.0;
  double sum = 0.0;
  double sum_squares = 0.0;

  static WsaWeightSums uniform(double alpha, int degree);
  static WsaWeightSums from(const aggregate::ResolvedWeights& w);
};

/// Unconditional WSA moments. `pooling` defaults to the model priors.
MomentSummary wsa_moments(const model::GaussianClassModel& model, const model::TransitionMatrix& p,
                          double alpha, int degree, const Vector* pooling = nullptr);
MomentSummary wsa_moments(const model::GaussianClassModel& model, const model::TransitionMatrix& p,
                          const WsaWeightSums& weights, int degree, const Vector* pooling = nullptr);

/// SCA moments at degree d (normalization is handled by the classifier).
MomentSummary sca_moments(const model::GaussianClassModel& model, const model::TransitionMatrix& p,
                          int degree, const Vector* pooling = nullptr);

/// K-hop SCA moments; profile = (d_1, ..., d_K), hop k uses P^k.
MomentSummary sca_khop_moments(const model::GaussianClassModel& model,
                               const model::TransitionMatrix& p, const DegreeKey& profile,
                               const Vector* pooling = nullptr);

}  // namespace graphsig::classify
