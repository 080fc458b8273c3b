#pragma once

#include "graphsig/model/types.hpp"
#include "graphsig/synth/rng.hpp"

#include <cstdint>
#include <vector>

namespace graphsig::synth {

/// Draws x ~ N(mu_label, C) using the Cholesky factor of C (diagonal
/// shortcut when C is diagonal).
class FeatureSampler {
 public:
  explicit FeatureSampler(const model::GaussianClassModel& model);

  void draw(int label, CounterRng& rng, Eigen::Ref<Vector> out) const;
  [[nodiscard]] int dim() const { return static_cast<int>(lower_.rows()); }

 private:
  const model::GaussianClassModel* model_;
  Matrix lower_;
  Vector diag_;
  bool diagonal_ = false;
};

/// Draws a class index from a probability vector by inverse CDF.
int draw_category(const Vector& probabilities, CounterRng& rng);

/// One focal node with its first-order neighborhood drawn under the
/// constant-transition assumption.
struct NeighborhoodSample {
  int focal_label = 0;
  int degree = 0;
  std::vector<int> neighbor_labels;
  std::vector<int> class_counts;  // n_q, sums to degree
  Vector focal_feature;
  Matrix neighbor_features;  // F x degree, one column per neighbor
};

/// Higher-order shells: hop k holds d_k labels and features drawn from row
/// y of P^k, independently across hops given the focal label.
struct HopShell {
  std::vector<int> labels;
  Matrix features;  // F x d_k
};

/// Exact per-neighborhood sampler. Every trial owns its random streams,
/// keyed by (seed, cell key, trial), so batches are identical for any
/// worker count or evaluation order.
class NeighborhoodSampler {
 public:
  NeighborhoodSampler(const model::GaussianClassModel& model, const model::TransitionMatrix& p,
                      int max_hops = 1);

  /// Fills `out` reusing its buffers.
  void sample(std::uint64_t seed, std::uint64_t cell_key, std::uint64_t trial, int degree,
              NeighborhoodSample& out) const;

  /// Hops 2..K for the same trial; `shells[k-2]` is hop k. `profile` holds
  /// d_1..d_K (d_1 is ignored here since hop 1 comes from sample()).
  void sample_higher_hops(std::uint64_t seed, std::uint64_t cell_key, std::uint64_t trial,
                          int focal_label, const DegreeKey& profile,
                          std::vector<HopShell>& shells) const;

  [[nodiscard]] const model::GaussianClassModel& model() const { return *model_; }
  [[nodiscard]] int max_hops() const { return static_cast<int>(hop_rows_.size()); }

 private:
  const model::GaussianClassModel* model_;
  FeatureSampler features_;
  std::vector<model::TransitionMatrix> hop_rows_;  // P, P^2, ...
};

/// Materialized batch of T samples at degree d.
std::vector<NeighborhoodSample> sample_neighborhood_batch(const model::GaussianClassModel& model,
                                                          const model::TransitionMatrix& p,
                                                          int degree, std::uint64_t trials,
                                                          std::uint64_t seed);

}  // namespace graphsig::synth
