#pragma once

#include "graphsig/classify/alpha.hpp"
#include "graphsig/model/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphsig::analysis {

inline constexpr std::uint64_t kDefaultSeed = 20240229;

enum class Aggregator { agnostic, wsa, sca, sca_norm, sca_k, gcn_baseline, gin_baseline };

std::string_view aggregator_name(Aggregator a);
Aggregator aggregator_from_name(std::string_view name);

enum class Execution { serial, parallel };

/// The three transition structures used throughout the experiments.
///   1: M = 2, p_11 = p_22 = p_h.
///   2: M = 4, p_mm = p_h, p_12 = p_21 = p_34 = p_43 = 1 - p_h.
///   3: M = 4, p_11 = p_22 = p_34 = p_43 = p_h, p_12 = p_21 = p_33 = p_44 = 1 - p_h.
model::TransitionMatrix special_case_transition(int case_id, double p_h);
int special_case_classes(int case_id);

struct ModelSpec {
  int num_classes = 2;
  int feature_dim = 20;
  double sigma = 1.0;
  std::optional<Vector> priors;                   // uniform when absent
  std::optional<std::vector<Vector>> means;       // explicit means, or
  double simplex_gamma0 = 4.0;                    // simplex placement
};

model::GaussianClassModel make_model(const ModelSpec& spec);

enum class AlphaPolicyKind { closed_form, grid, fixed };

struct AlphaPolicy {
  AlphaPolicyKind kind = AlphaPolicyKind::grid;
  double value = 0.0;
  classify::AlphaGrid grid;
};

struct ExperimentConfig {
  ModelSpec model;
  int special_case = 1;                 // 0 means an explicit matrix
  std::optional<Matrix> transition;     // explicit P
  std::vector<double> p_h_values;       // ignored with an explicit P
  std::vector<int> degrees;
  AlphaPolicy alpha;
  std::vector<Aggregator> aggregators;
  std::uint64_t trials = 100000;
  std::uint64_t seed = kDefaultSeed;
  int hops = 2;                         // K for sca_k
  double gin_eps = 0.0;

  /// Throws with a description of the first violated constraint.
  void validate() const;
};

struct CellResult {
  Aggregator aggregator = Aggregator::agnostic;
  int special_case = 0;
  double p_h = 0.0;
  int degree = 0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double error = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  std::optional<double> alpha_star;
  std::string note;
  model::DeflectionTable deflections{{0}, Matrix::Zero(1, 1)};
};

struct CellFailure {
  Aggregator aggregator = Aggregator::agnostic;
  double p_h = 0.0;
  int degree = 0;
  std::string message;
};

struct MonteCarloResult {
  std::vector<CellResult> cells;     // sorted by (aggregator, p_h, degree)
  std::vector<CellFailure> failures;

  [[nodiscard]] const CellResult& find(Aggregator a, double p_h, int degree) const;
};

/// Cells with fewer errors than this are flagged unreliable.
inline constexpr std::uint64_t kMinReliableErrors = 20;

/// Runs every (aggregator, p_h, degree) cell. All aggregators of one
/// (p_h, degree) pair see the same neighborhood samples.
MonteCarloResult run_monte_carlo(const ExperimentConfig& config,
                                 Execution execution = Execution::parallel);

/// Bounds, deflections and alpha of every cell without simulation; error
/// fields are NaN and trials is 0.
MonteCarloResult evaluate_cells(const ExperimentConfig& config);

struct AlphaRow {
  int special_case = 0;
  double p_h = 0.0;
  int degree = 0;
  double alpha = 0.0;                  // policy result (grid search by default)
  double bound = 0.0;                  // union bound at that alpha
  std::optional<double> closed_form;   // special case 1 only
};

/// WSA alpha per (p_h, degree) under the configured policy.
std::vector<AlphaRow> alpha_table(const ExperimentConfig& config);

/// sqrt(e (1 - e) / T)
double mc_standard_error(double error_rate, std::uint64_t trials);

}  // namespace graphsig::analysis
