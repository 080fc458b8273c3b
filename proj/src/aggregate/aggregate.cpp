#include "graphsig/aggregate/aggregate.hpp"

#include <cmath>

namespace graphsig::aggregate {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_dims(const Vector& focal, const Matrix& neighbors) {
  if (neighbors.cols() > 0 && neighbors.rows() != focal.size()) {
    throw Error("aggregate: neighbor feature dimension " + std::to_string(neighbors.rows()) +
                " does not match focal dimension " + std::to_string(focal.size()));
  }
}

}  // namespace

ResolvedWeights resolve_weights(const AggregationWeights& weights, int degree,
                                std::span<const int> neighbor_degrees) {
  if (degree < 0) throw Error("aggregate: negative degree");
  ResolvedWeights out;
  if (degree == 0) return out;
  const auto d = static_cast<std::size_t>(degree);
  std::visit(overloaded{
                 [&](const UniformAlpha& w) {
                   out.self_weight = 1.0;
                   out.neighbor_weights.assign(d, w.alpha);
                 },
                 [&](const GcnWeights&) {
                   if (neighbor_degrees.size() != d) {
                     throw Error("aggregate: GCN weights need the degree of every neighbor");
                   }
                   out.self_weight = 1.0 / degree;
                   out.neighbor_weights.resize(d);
                   for (std::size_t j = 0; j < d; ++j) {
                     if (neighbor_degrees[j] < 1) throw Error("aggregate: neighbor with degree < 1");
                     out.neighbor_weights[j] = 1.0 / std::sqrt(static_cast<double>(degree) * neighbor_degrees[j]);
                   }
                 },
                 [&](const GinWeights& w) {
                   out.self_weight = 1.0 + w.eps;
                   out.neighbor_weights.assign(d, 1.0);
                 },
                 [&](const CustomWeights& w) {
                   if (w.neighbor_weights.size() != d) {
                     throw Error("aggregate: custom weights list has " +
                                 std::to_string(w.neighbor_weights.size()) + " entries for degree " +
                                 std::to_string(degree));
                   }
                   out.self_weight = w.self_weight;
                   out.neighbor_weights = w.neighbor_weights;
                 },
             },
             weights);
  return out;
}

Representation wsa_aggregate(const Vector& focal, const Matrix& neighbors,
                             const AggregationWeights& weights,
                             std::span<const int> neighbor_degrees) {
  check_dims(focal, neighbors);
  const int d = static_cast<int>(neighbors.cols());
  const auto w = resolve_weights(weights, d, neighbor_degrees);
  Representation rep;
  rep.kind = RepresentationKind::wsa;
  rep.degree_profile = {d};
  rep.values = w.self_weight * focal;
  for (int j = 0; j < d; ++j) rep.values += w.neighbor_weights[static_cast<std::size_t>(j)] * neighbors.col(j);
  return rep;
}

Representation sca_aggregate(const Vector& focal, const Matrix& neighbors, bool normalize) {
  check_dims(focal, neighbors);
  Representation rep;
  rep.kind = RepresentationKind::sca;
  rep.degree_profile = {static_cast<int>(neighbors.cols())};
  rep.values.resize(2 * focal.size());
  sca_into(focal, neighbors, normalize, rep.values);
  rep.degenerate = neighbors.cols() == 0;
  return rep;
}

Representation sca_khop_aggregate(const Vector& focal, const std::vector<Matrix>& hop_features) {
  if (hop_features.empty()) throw Error("aggregate: k-hop aggregation needs K >= 1");
  const auto f = focal.size();
  Representation rep;
  rep.kind = RepresentationKind::sca_khop;
  rep.values.resize(f * static_cast<Eigen::Index>(hop_features.size() + 1));
  rep.values.head(f) = focal;
  for (std::size_t k = 0; k < hop_features.size(); ++k) {
    const Matrix& hop = hop_features[k];
    check_dims(focal, hop);
    rep.degree_profile.push_back(static_cast<int>(hop.cols()));
    rep.values.segment(f * static_cast<Eigen::Index>(k + 1), f) =
        hop.cols() > 0 ? Vector(hop.rowwise().sum()) : Vector::Zero(f);
    if (hop.cols() == 0) rep.degenerate = true;
  }
  return rep;
}

void wsa_into(const Vector& focal, const Matrix& neighbors, double self_weight,
              double uniform_neighbor_weight, Eigen::Ref<Vector> out) {
  out = self_weight * focal;
  if (neighbors.cols() > 0) out.noalias() += uniform_neighbor_weight * neighbors.rowwise().sum();
}

void sca_into(const Vector& focal, const Matrix& neighbors, bool normalize, Eigen::Ref<Vector> out) {
  const auto f = focal.size();
  out.head(f) = focal;
  if (neighbors.cols() == 0) {
    out.tail(f).setZero();
    return;
  }
  out.tail(f) = neighbors.rowwise().sum();
  if (normalize) out.tail(f) /= static_cast<double>(neighbors.cols());
}

}  // namespace graphsig::aggregate
