#pragma once

#include "graphsig/classify/moments.hpp"
#include "graphsig/model/decision.hpp"

#include <map>
#include <string>
#include <string_view>

namespace graphsig::classify {

/// Score matrix and biases for one degree profile: score_m = w_m^T z + b_m.
struct ClassifierBlock {
  Matrix weights;  // M x dim, row m is w_m
  Vector biases;   // M
};

/// Degree-indexed linear classifiers sharing one representation dimension.
/// Lookups at a profile that was not built throw; nothing falls through to
/// another degree.
class LinearClassifierFamily {
 public:
  LinearClassifierFamily(RepresentationKind kind, int num_classes, int dim, bool normalized = false);

  void add(const DegreeKey& key, ClassifierBlock block);
  [[nodiscard]] bool contains(const DegreeKey& key) const { return blocks_.count(key) > 0; }
  [[nodiscard]] const ClassifierBlock& at(const DegreeKey& key) const;

  [[nodiscard]] Vector scores(const DegreeKey& key, const Vector& z) const;
  /// argmax of the scores, ties to the smallest class index.
  [[nodiscard]] int predict(const DegreeKey& key, const Vector& z) const;

  [[nodiscard]] RepresentationKind kind() const { return kind_; }
  [[nodiscard]] bool normalized() const { return normalized_; }
  [[nodiscard]] int num_classes() const { return num_classes_; }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const std::map<DegreeKey, ClassifierBlock>& blocks() const { return blocks_; }

  /// Merge the blocks of another family of the same shape.
  void merge(const LinearClassifierFamily& other);

 private:
  RepresentationKind kind_;
  int num_classes_;
  int dim_;
  bool normalized_;
  std::map<DegreeKey, ClassifierBlock> blocks_;
};

/// argmax with ties to the smallest index.
int argmax_first(const Eigen::Ref<const Vector>& scores);

/// w_m = C^{-1} mu_m, b_m = -1/2 mu_m^T C^{-1} mu_m + log pi_m, stored at degree {0}.
LinearClassifierFamily bayes_graph_agnostic(const model::GaussianClassModel& model);

/// w_m = Rbar^{-1} nubar_m, b_m = -1/2 nubar_m^T Rbar^{-1} nubar_m + log pi_{m,d}.
/// Works for any kind whose pooled covariance is nonsingular.
LinearClassifierFamily build_wsa_classifier(const MomentSummary& moments,
                                            const model::DegreePriors& priors);
LinearClassifierFamily build_generic_classifier(const MomentSummary& moments,
                                                const model::DegreePriors& priors);

/// Block-structured SCA classifier: focal weights C^{-1} mu_m, neighbor
/// weights H^{-1} mubar_m (d H^{-1} mubar_m on the normalized neighbor
/// mean), bias -1/2 mu_m^T C^{-1} mu_m - d/2 mubar_m^T H^{-1} mubar_m
/// + log pi_{m,d}. Degree 0 leaves the neighbor weights at zero.
LinearClassifierFamily build_sca_classifier(const MomentSummary& moments,
                                            const model::DegreePriors& priors, bool normalize);

/// K-hop SCA classifier on (K+1)F representations (1 <= K <= 3).
LinearClassifierFamily build_sca_khop_classifier(const model::GaussianClassModel& model,
                                                 const model::TransitionMatrix& p,
                                                 const DegreeKey& profile, int hops,
                                                 const model::DegreePriors& priors);

/// Deflections of the classifier built from `moments` via the pooled covariance.
model::DeflectionTable wsa_deflection(const MomentSummary& moments);

/// gamma_0(m,l) + sum_k d_k (mubar_{m,k} - mubar_{l,k})^T H_k^{-1} (...).
model::DeflectionTable sca_deflection(const MomentSummary& moments);

/// Flat text format: a header, then per profile `degree d1 [d2 ...]`
/// followed by M lines `w <class> <dim values>` and `b <class> <value>`.
std::string serialize(const LinearClassifierFamily& family);
LinearClassifierFamily parse_classifier_family(std::string_view text);

std::string_view kind_name(RepresentationKind kind);

}  // namespace graphsig::classify
