#include "graphsig/synth/graph.hpp"

#include "graphsig/format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <string_view>
#include <unordered_map>

namespace graphsig::synth {

LabeledGraph::LabeledGraph(std::vector<std::vector<int>> adjacency, std::vector<int> labels,
                           int num_classes, std::vector<std::int64_t> node_ids, Matrix features)
    : adjacency_(std::move(adjacency)),
      labels_(std::move(labels)),
      num_classes_(num_classes),
      node_ids_(std::move(node_ids)),
      features_(std::move(features)) {
  const auto n = static_cast<int>(labels_.size());
  if (static_cast<int>(adjacency_.size()) != n) throw Error("graph: adjacency/label size mismatch");
  if (num_classes_ < 1) throw Error("graph: need at least one class");
  if (node_ids_.empty()) {
    node_ids_.resize(static_cast<std::size_t>(n));
    std::iota(node_ids_.begin(), node_ids_.end(), std::int64_t{0});
  }
  if (static_cast<int>(node_ids_.size()) != n) throw Error("graph: node id table size mismatch");
  if (features_.size() > 0 && features_.rows() != n) throw Error("graph: feature rows != node count");

  std::size_t endpoints = 0;
  for (int i = 0; i < n; ++i) {
    const int y = labels_[static_cast<std::size_t>(i)];
    if (y != kUnlabeled && (y < 0 || y >= num_classes_)) {
      throw Error("graph: node " + std::to_string(node_ids_[static_cast<std::size_t>(i)]) +
                  " has label outside the class range");
    }
    const auto& nb = adjacency_[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const int j = nb[k];
      if (j < 0 || j >= n) throw Error("graph: neighbor index out of range");
      if (j == i) throw Error("graph: self-loop at node " + std::to_string(node_ids_[static_cast<std::size_t>(i)]));
      if (k > 0 && nb[k - 1] >= j) throw Error("graph: neighbor lists must be sorted and unique");
      const auto& back = adjacency_[static_cast<std::size_t>(j)];
      if (!std::binary_search(back.begin(), back.end(), i)) throw Error("graph: adjacency is not symmetric");
    }
    endpoints += nb.size();
  }
  num_edges_ = endpoints / 2;
}

std::vector<std::vector<int>> khop_shells(const LabeledGraph& graph, int node, int k) {
  if (node < 0 || node >= graph.num_nodes()) {
    throw Error("khop: node index " + std::to_string(node) + " out of range");
  }
  if (k < 1) throw Error("khop: order must be >= 1");
  std::vector<std::vector<int>> shells(static_cast<std::size_t>(k));
  std::unordered_map<int, int> seen{{node, 0}};
  std::vector<int> frontier{node};
  for (int hop = 1; hop <= k && !frontier.empty(); ++hop) {
    std::vector<int> next;
    for (int u : frontier) {
      for (int v : graph.neighbors(u)) {
        if (seen.emplace(v, hop).second) next.push_back(v);
      }
    }
    std::sort(next.begin(), next.end());
    shells[static_cast<std::size_t>(hop - 1)] = next;
    frontier = std::move(next);
  }
  return shells;
}

std::vector<int> khop_neighbors(const LabeledGraph& graph, int node, int k) {
  return khop_shells(graph, node, k).back();
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && !(line[j] == ' ' || line[j] == '\t' || line[j] == ',' || line[j] == '\r')) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::int64_t parse_int(std::string_view tok, std::string_view source, std::size_t line_no) {
  std::int64_t value = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw Error(std::string(source) + " line " + std::to_string(line_no) + ": '" + std::string(tok) +
                "' is not an integer");
  }
  return value;
}

double parse_real(std::string_view tok, std::string_view source, std::size_t line_no) {
  double value = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw Error(std::string(source) + " line " + std::to_string(line_no) + ": '" + std::string(tok) +
                "' is not a number");
  }
  return value;
}

LoadedGraph load_impl(std::istream& edges, std::istream& labels, std::istream* features,
                      const LoadOptions& options, std::string_view edge_name,
                      std::string_view label_name, std::string_view feature_name) {
  LoadReport report;
  std::set<std::int64_t> ids;
  std::set<std::pair<std::int64_t, std::int64_t>> edge_set;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(edges, line)) {
    ++line_no;
    const auto toks = split_tokens(strip_comment(line));
    if (toks.empty()) continue;
    ++report.lines;
    if (toks.size() > 2) {
      throw Error(std::string(edge_name) + " line " + std::to_string(line_no) +
                  ": expected a node pair, got " + std::to_string(toks.size()) + " tokens");
    }
    const auto u = parse_int(toks[0], edge_name, line_no);
    ids.insert(u);
    if (toks.size() == 1) continue;
    const auto v = parse_int(toks[1], edge_name, line_no);
    ids.insert(v);
    if (u == v) {
      ++report.self_loops_dropped;
      continue;
    }
    if (!edge_set.emplace(std::min(u, v), std::max(u, v)).second) ++report.duplicates_dropped;
  }
  if (ids.empty()) throw Error(std::string(edge_name) + ": empty graph");

  std::map<std::int64_t, std::int64_t> raw_labels;
  line_no = 0;
  while (std::getline(labels, line)) {
    ++line_no;
    const auto toks = split_tokens(strip_comment(line));
    if (toks.empty()) continue;
    if (toks.size() != 2) {
      throw Error(std::string(label_name) + " line " + std::to_string(line_no) +
                  ": expected 'node_id,label'");
    }
    const auto id = parse_int(toks[0], label_name, line_no);
    const auto y = parse_int(toks[1], label_name, line_no);
    if (!ids.count(id)) {
      throw Error(std::string(label_name) + " line " + std::to_string(line_no) + ": node " +
                  std::to_string(id) + " does not appear in the edge list");
    }
    const auto [it, inserted] = raw_labels.emplace(id, y);
    if (!inserted && it->second != y) {
      throw Error(std::string(label_name) + ": conflicting labels for node " + std::to_string(id));
    }
  }

  std::vector<std::int64_t> node_ids(ids.begin(), ids.end());
  std::unordered_map<std::int64_t, int> index;
  for (std::size_t i = 0; i < node_ids.size(); ++i) index.emplace(node_ids[i], static_cast<int>(i));

  std::set<std::int64_t> distinct;
  for (const auto& [id, y] : raw_labels) distinct.insert(y);
  std::vector<std::int64_t> label_values(distinct.begin(), distinct.end());
  std::map<std::int64_t, int> class_of;
  for (std::size_t c = 0; c < label_values.size(); ++c) class_of[label_values[c]] = static_cast<int>(c);

  std::vector<int> node_labels(node_ids.size(), kUnlabeled);
  for (std::size_t i = 0; i < node_ids.size(); ++i) {
    const auto it = raw_labels.find(node_ids[i]);
    if (it == raw_labels.end()) {
      if (!options.allow_unlabeled) {
        throw Error(std::string(label_name) + ": node " + std::to_string(node_ids[i]) +
                    " has no label (use --allow-unlabeled to skip unlabeled nodes)");
      }
      ++report.unlabeled_nodes;
      continue;
    }
    node_labels[i] = class_of.at(it->second);
  }

  std::vector<std::vector<int>> adjacency(node_ids.size());
  for (const auto& [u, v] : edge_set) {
    const int a = index.at(u);
    const int b = index.at(v);
    adjacency[static_cast<std::size_t>(a)].push_back(b);
    adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nb : adjacency) std::sort(nb.begin(), nb.end());

  Matrix feats;
  if (features != nullptr) {
    std::map<std::int64_t, std::vector<double>> rows;
    std::size_t width = 0;
    line_no = 0;
    while (std::getline(*features, line)) {
      ++line_no;
      const auto toks = split_tokens(strip_comment(line));
      if (toks.empty()) continue;
      if (toks.size() < 2) {
        throw Error(std::string(feature_name) + " line " + std::to_string(line_no) + ": no feature values");
      }
      const auto id = parse_int(toks[0], feature_name, line_no);
      if (!index.count(id)) {
        throw Error(std::string(feature_name) + " line " + std::to_string(line_no) + ": node " +
                    std::to_string(id) + " does not appear in the edge list");
      }
      if (width == 0) width = toks.size() - 1;
      if (toks.size() - 1 != width) {
        throw Error(std::string(feature_name) + " line " + std::to_string(line_no) + ": expected " +
                    std::to_string(width) + " features");
      }
      std::vector<double> row;
      for (std::size_t t = 1; t < toks.size(); ++t) row.push_back(parse_real(toks[t], feature_name, line_no));
      rows[id] = std::move(row);
    }
    if (rows.size() != node_ids.size()) {
      throw Error(std::string(feature_name) + ": features given for " + std::to_string(rows.size()) +
                  " of " + std::to_string(node_ids.size()) + " nodes");
    }
    feats.resize(static_cast<Eigen::Index>(node_ids.size()), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < node_ids.size(); ++i) {
      const auto& row = rows.at(node_ids[i]);
      for (std::size_t f = 0; f < width; ++f) {
        feats(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f)) = row[f];
      }
    }
  }

  const int num_classes = std::max<int>(1, static_cast<int>(label_values.size()));
  LabeledGraph graph(std::move(adjacency), std::move(node_labels), num_classes, std::move(node_ids),
                     std::move(feats));
  return LoadedGraph{std::move(graph), std::move(label_values), report};
}

}  // namespace

LoadedGraph load_graph(std::istream& edges, std::istream& labels, std::istream* features,
                       const LoadOptions& options) {
  return load_impl(edges, labels, features, options, "edge list", "labels", "features");
}

LoadedGraph load_graph(const std::filesystem::path& edges, const std::filesystem::path& labels,
                       const std::optional<std::filesystem::path>& features,
                       const LoadOptions& options) {
  std::ifstream e(edges);
  if (!e) throw Error("cannot open edge list " + edges.string());
  std::ifstream l(labels);
  if (!l) throw Error("cannot open labels file " + labels.string());
  std::ifstream f;
  if (features) {
    f.open(*features);
    if (!f) throw Error("cannot open features file " + features->string());
  }
  return load_impl(e, l, features ? &f : nullptr, options, edges.string(), labels.string(),
                   features ? features->string() : std::string{});
}

void write_graph(const LabeledGraph& graph, std::ostream& edges, std::ostream& labels,
                 std::ostream* features) {
  for (int i = 0; i < graph.num_nodes(); ++i) {
    const auto id = graph.node_id(i);
    if (graph.degree(i) == 0) edges << id << '\n';
    for (int j : graph.neighbors(i)) {
      if (j > i) edges << id << ' ' << graph.node_id(j) << '\n';
    }
    if (graph.label(i) != kUnlabeled) labels << id << ',' << graph.label(i) + 1 << '\n';
  }
  if (features != nullptr && graph.has_features()) {
    const auto& x = graph.features();
    for (int i = 0; i < graph.num_nodes(); ++i) {
      *features << graph.node_id(i);
      for (Eigen::Index f = 0; f < x.cols(); ++f) *features << ',' << format_double(x(i, f));
      *features << '\n';
    }
  }
}

}  // namespace graphsig::synth
