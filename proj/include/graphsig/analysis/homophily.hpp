#pragma once

#include "graphsig/analysis/experiment.hpp"
#include "graphsig/synth/graph.hpp"

#include <cstddef>
#include <vector>

namespace graphsig::analysis {

struct DegreeHomophily {
  int degree = 0;
  std::size_t count = 0;  // |V_d| among nodes with a defined kappa
  double mean = 0.0;
  double std_dev = 0.0;   // population standard deviation
};

struct HomophilyReport {
  /// kappa_i = (1/d_i) sum_j 1(y_j = y_i) over labeled neighbors; NaN for
  /// isolated or unlabeled nodes.
  std::vector<double> kappa;
  std::vector<DegreeHomophily> per_degree;  // ascending degree
  double global = 0.0;                      // mean kappa over nodes with one defined
  std::size_t nodes_used = 0;
};

/// Throws when the graph has no edges or no node has a defined kappa.
HomophilyReport homophily_stats(const synth::LabeledGraph& graph,
                                Execution execution = Execution::parallel);

}  // namespace graphsig::analysis
