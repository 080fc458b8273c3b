#pragma once

#include "graphsig/model/types.hpp"
#include "graphsig/synth/graph.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace graphsig::synth {

/// Expected-degree propensities theta_i for the DC-SBM.
struct ConstantDegree {
  double degree = 0.0;
};
struct ExplicitDegrees {
  std::vector<double> degrees;  // one per node
};
/// Truncated power law p(theta) ~ theta^-exponent on [min, max].
struct PowerLawDegrees {
  double exponent = 2.5;
  double min = 1.0;
  double max = 100.0;
};
using DegreeSpec = std::variant<ConstantDegree, ExplicitDegrees, PowerLawDegrees>;

struct DcsbmReport {
  /// Unordered node pairs whose calibrated probability exceeded 1.
  std::uint64_t clamped_pairs = 0;
  std::uint64_t total_pairs = 0;
};

struct DcsbmGraph {
  LabeledGraph graph;
  std::vector<double> propensities;
  DcsbmReport report;
};

/// Largest tolerated fraction of clamped pairs before generation fails.
inline constexpr double kMaxClampedFraction = 1e-3;

/// Degree-corrected stochastic block model. Labels are i.i.d. from the
/// priors; each pair (i, j) becomes an edge independently with probability
/// min(1, theta_i theta_j omega_{y_i y_j}), with the block affinity
/// omega_{m,l} = pi_m p_{m,l} V / (Theta_m Theta_l) (V total propensity,
/// Theta_m the propensity mass of class m). This makes the expected class
/// mix of a class-m node's neighbors exactly row m of P. Requires detailed
/// balance. Node features are drawn from the Gaussian model.
DcsbmGraph generate_dcsbm(const model::GaussianClassModel& model, const model::TransitionMatrix& p,
                          const DegreeSpec& degrees, int num_nodes, std::uint64_t seed);

}  // namespace graphsig::synth
