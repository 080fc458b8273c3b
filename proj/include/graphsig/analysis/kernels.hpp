#pragma once

// Data-parallel kernels. Each has a serial reference and an OpenMP version
// that must agree exactly: error counts are integer sums, and floating-point
// moment sums are reduced over fixed-size trial chunks combined in chunk
// order, so the thread count never changes a result.

#include "graphsig/analysis/experiment.hpp"
#include "graphsig/classify/classifier.hpp"
#include "graphsig/synth/graph.hpp"
#include "graphsig/synth/sampler.hpp"

#include <cstdint>
#include <vector>

namespace graphsig::analysis {

/// How one aggregator turns a sampled neighborhood into a representation and
/// which classifier block scores it.
struct AggregatorPlan {
  Aggregator aggregator = Aggregator::agnostic;
  classify::LinearClassifierFamily family;
  DegreeKey key;
  double self_weight = 1.0;      // WSA-style aggregators
  double neighbor_weight = 0.0;  // WSA-style aggregators
};

struct CellPlan {
  const synth::NeighborhoodSampler* sampler = nullptr;
  int degree = 0;
  DegreeKey khop_profile;  // (d_1..d_K) when any aggregator is sca_k
  std::uint64_t seed = 0;
  std::uint64_t cell_key = 0;
  std::vector<AggregatorPlan> aggregators;
};

/// Misclassification counts per aggregator over trials 0..T-1.
std::vector<std::uint64_t> count_errors_serial(const CellPlan& plan, std::uint64_t trials);
std::vector<std::uint64_t> count_errors_parallel(const CellPlan& plan, std::uint64_t trials);
std::vector<std::uint64_t> count_errors(const CellPlan& plan, std::uint64_t trials, Execution execution);

/// Per-class sample moments of one aggregator's representation.
struct EmpiricalMoments {
  std::vector<std::uint64_t> counts;
  std::vector<Vector> means;
  std::vector<Matrix> covariances;  // normalized by n
};

inline constexpr std::uint64_t kMomentChunk = 4096;

EmpiricalMoments representation_moments_serial(const CellPlan& plan, std::size_t aggregator_index,
                                               std::uint64_t trials);
EmpiricalMoments representation_moments_parallel(const CellPlan& plan, std::size_t aggregator_index,
                                                 std::uint64_t trials);

/// Per-node homophily kappa_i over labeled neighbors; NaN for nodes that are
/// unlabeled or have no labeled neighbor.
std::vector<double> node_homophily_serial(const synth::LabeledGraph& graph);
std::vector<double> node_homophily_parallel(const synth::LabeledGraph& graph);

}  // namespace graphsig::analysis
