#include "graphsig/analysis/homophily.hpp"

#include "graphsig/analysis/kernels.hpp"

#include <cmath>
#include <map>

namespace graphsig::analysis {

HomophilyReport homophily_stats(const synth::LabeledGraph& graph, Execution execution) {
  if (graph.num_edges() == 0) throw Error("homophily: graph has no edges");
  HomophilyReport report;
  report.kappa = execution == Execution::serial ? node_homophily_serial(graph) : node_homophily_parallel(graph);

  struct Sums {
    std::size_t n = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::map<int, Sums> by_degree;
  double total = 0.0;
  for (int i = 0; i < graph.num_nodes(); ++i) {
    const double k = report.kappa[static_cast<std::size_t>(i)];
    if (std::isnan(k)) continue;
    auto& s = by_degree[graph.degree(i)];
    ++s.n;
    s.sum += k;
    s.sum_sq += k * k;
    total += k;
    ++report.nodes_used;
  }
  if (report.nodes_used == 0) throw Error("homophily: no labeled node has a labeled neighbor");
  report.global = total / static_cast<double>(report.nodes_used);

  for (const auto& [d, s] : by_degree) {
    const double n = static_cast<double>(s.n);
    const double mean = s.sum / n;
    const double var = std::max(0.0, s.sum_sq / n - mean * mean);
    report.per_degree.push_back({d, s.n, mean, std::sqrt(var)});
  }
  return report;
}

}  // namespace graphsig::analysis
