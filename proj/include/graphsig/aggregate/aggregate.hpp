#pragma once

#include "graphsig/common.hpp"

#include <span>
#include <variant>
#include <vector>

namespace graphsig::aggregate {

/// z = x + alpha * sum_j x_j (self weight fixed to 1).
struct UniformAlpha {
  double alpha = 0.0;
};
/// Self weight 1/d_i, neighbor weight 1/sqrt(d_i d_j).
struct GcnWeights {};
/// Self weight 1 + eps, neighbor weight 1.
struct GinWeights {
  double eps = 0.0;
};
/// Explicit self weight and one weight per neighbor (in neighbor order).
struct CustomWeights {
  double self_weight = 1.0;
  std::vector<double> neighbor_weights;
};

using AggregationWeights = std::variant<UniformAlpha, GcnWeights, GinWeights, CustomWeights>;

/// Resolved coefficients for one focal node.
struct ResolvedWeights {
  double self_weight = 1.0;
  std::vector<double> neighbor_weights;
};

/// Applies a weighting scheme to a focal node of degree d whose neighbors
/// have the given degrees (only GCN reads them). Degree 0 resolves to the
/// graph-agnostic passthrough (self weight 1) for every scheme.
ResolvedWeights resolve_weights(const AggregationWeights& weights, int degree,
                                std::span<const int> neighbor_degrees);

enum class RepresentationKind { raw, wsa, sca, sca_khop };

struct Representation {
  RepresentationKind kind = RepresentationKind::raw;
  Vector values;
  DegreeKey degree_profile;
  /// Set when an SCA neighbor block is empty (degree 0).
  bool degenerate = false;
};

/// Weighted sum aggregation. `neighbors` is F x d (one column per neighbor).
Representation wsa_aggregate(const Vector& focal, const Matrix& neighbors,
                             const AggregationWeights& weights,
                             std::span<const int> neighbor_degrees = {});

/// Sum-then-concatenate: [x ; sum_j x_j], or [x ; mean_j x_j] when normalized.
Representation sca_aggregate(const Vector& focal, const Matrix& neighbors, bool normalize);

/// [x ; s^(1) ; ... ; s^(K)] with s^(k) the sum over the k-th hop shell.
Representation sca_khop_aggregate(const Vector& focal, const std::vector<Matrix>& hop_features);

/// In-place variants for hot loops; `out` must already have the right size.
void wsa_into(const Vector& focal, const Matrix& neighbors, double self_weight,
              double uniform_neighbor_weight, Eigen::Ref<Vector> out);
void sca_into(const Vector& focal, const Matrix& neighbors, bool normalize, Eigen::Ref<Vector> out);

}  // namespace graphsig::aggregate
