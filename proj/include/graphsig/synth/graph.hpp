#pragma once

#include "graphsig/common.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace graphsig::synth {

inline constexpr int kUnlabeled = -1;

/// Undirected simple graph with class labels and optional node features.
///
/// Nodes are 0..N-1; `node_ids` keeps the external identifier of each node
/// (identity for generated graphs). Labels are 0-based class indices, or
/// kUnlabeled. Construction enforces symmetry, sortedness and the absence of
/// self-loops and duplicate edges.
class LabeledGraph {
 public:
  LabeledGraph(std::vector<std::vector<int>> adjacency, std::vector<int> labels, int num_classes,
               std::vector<std::int64_t> node_ids = {}, Matrix features = {});

  [[nodiscard]] int num_nodes() const { return static_cast<int>(labels_.size()); }
  [[nodiscard]] int num_classes() const { return num_classes_; }
  [[nodiscard]] std::size_t num_edges() const { return num_edges_; }
  [[nodiscard]] std::span<const int> neighbors(int i) const { return adjacency_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] int degree(int i) const { return static_cast<int>(neighbors(i).size()); }
  [[nodiscard]] int label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] const std::vector<int>& labels() const { return labels_; }
  [[nodiscard]] std::int64_t node_id(int i) const { return node_ids_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] const std::vector<std::int64_t>& node_ids() const { return node_ids_; }
  [[nodiscard]] bool has_features() const { return features_.size() > 0; }
  /// N x F, one row per node.
  [[nodiscard]] const Matrix& features() const { return features_; }

 private:
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> labels_;
  int num_classes_;
  std::vector<std::int64_t> node_ids_;
  Matrix features_;
  std::size_t num_edges_ = 0;
};

/// Nodes at shortest-path distance exactly k from node i, sorted.
std::vector<int> khop_neighbors(const LabeledGraph& graph, int node, int k);

/// All hop shells 1..k of node i in one breadth-first pass.
std::vector<std::vector<int>> khop_shells(const LabeledGraph& graph, int node, int k);

struct LoadOptions {
  bool allow_unlabeled = false;
};

struct LoadReport {
  std::size_t lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
  std::size_t unlabeled_nodes = 0;
};

/// Parsed graph files. Labels are remapped to 0-based classes in increasing
/// order of their external values (kept in `label_values`).
struct LoadedGraph {
  LabeledGraph graph;
  std::vector<std::int64_t> label_values;
  LoadReport report;
};

/// Edge list: one `u v` pair per line (whitespace or comma separated),
/// `#` comments. A line with a single id declares an isolated node.
/// Labels: `node_id,label` lines. Features (optional): `node_id,f1,...,fF`.
LoadedGraph load_graph(std::istream& edges, std::istream& labels, std::istream* features,
                       const LoadOptions& options = {});
LoadedGraph load_graph(const std::filesystem::path& edges, const std::filesystem::path& labels,
                       const std::optional<std::filesystem::path>& features,
                       const LoadOptions& options = {});

/// Writes the three files in the formats load_graph reads. Labels are written
/// 1-based; features with 17 significant digits.
void write_graph(const LabeledGraph& graph, std::ostream& edges, std::ostream& labels,
                 std::ostream* features);

}  // namespace graphsig::synth
