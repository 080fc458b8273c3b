#include "graphsig/analysis/experiment.hpp"

#include "graphsig/analysis/kernels.hpp"
#include "graphsig/synth/rng.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>

namespace graphsig::analysis {

namespace {

constexpr std::array<std::string_view, 7> kAggregatorNames = {
    "agnostic", "wsa", "sca", "sca_norm", "sca_k", "gcn_baseline", "gin_baseline"};

}  // namespace

std::string_view aggregator_name(Aggregator a) {
  return kAggregatorNames.at(static_cast<std::size_t>(a));
}

Aggregator aggregator_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kAggregatorNames.size(); ++i) {
    if (kAggregatorNames[i] == name) return static_cast<Aggregator>(i);
  }
  throw Error("unknown aggregator '" + std::string(name) + "'");
}

int special_case_classes(int case_id) {
  switch (case_id) {
    case 1:
      return 2;
    case 2:
    case 3:
      return 4;
    default:
      throw Error("invalid special case id " + std::to_string(case_id) + " (expected 1, 2 or 3)");
  }
}

model::TransitionMatrix special_case_transition(int case_id, double p_h) {
  const int m_count = special_case_classes(case_id);
  if (!(p_h >= 0.0 && p_h <= 1.0)) throw Error("special case: p_h must lie in [0, 1]");
  const double q = 1.0 - p_h;
  Matrix p = Matrix::Zero(m_count, m_count);
  if (case_id == 1) {
    p << p_h, q, q, p_h;
  } else if (case_id == 2) {
    p.diagonal().setConstant(p_h);
    p(0, 1) = p(1, 0) = p(2, 3) = p(3, 2) = q;
  } else {
    p(0, 0) = p(1, 1) = p(2, 3) = p(3, 2) = p_h;
    p(0, 1) = p(1, 0) = p(2, 2) = p(3, 3) = q;
  }
  return model::TransitionMatrix(p);
}

model::GaussianClassModel make_model(const ModelSpec& spec) {
  if (spec.num_classes < 2) throw Error("model: need at least two classes");
  if (spec.feature_dim < 1) throw Error("model: feature dimension must be positive");
  if (!(spec.sigma > 0.0)) throw Error("model: sigma must be positive");
  Vector priors = spec.priors ? *spec.priors : Vector::Constant(spec.num_classes, 1.0 / spec.num_classes);
  if (priors.size() != spec.num_classes) throw Error("model: prior count != M");
  std::vector<Vector> means = spec.means ? *spec.means
                                         : model::simplex_means(spec.num_classes, spec.feature_dim,
                                                                spec.simplex_gamma0, spec.sigma);
  return model::GaussianClassModel::isotropic(std::move(priors), std::move(means), spec.sigma);
}

void ExperimentConfig::validate() const {
  if (aggregators.empty()) throw Error("nothing to simulate: the aggregator list is empty");
  if (trials < 1000) throw Error("trials must be at least 1000");
  if (degrees.empty()) throw Error("degree list is empty");
  for (int d : degrees) {
    if (d < 0) throw Error("degrees must be non-negative");
  }
  if (hops < 1 || hops > 3) throw Error("K must lie in [1, 3]");
  if (special_case == 0) {
    if (!transition) throw Error("explicit transition matrix missing");
  } else {
    if (special_case_classes(special_case) != model.num_classes) {
      throw Error("special case " + std::to_string(special_case) + " needs M = " +
                  std::to_string(special_case_classes(special_case)));
    }
    if (p_h_values.empty()) throw Error("p_h list is empty");
    for (double p : p_h_values) {
      if (!(p >= 0.0 && p <= 1.0)) throw Error("p_h values must lie in [0, 1]");
    }
  }
  if (alpha.kind == AlphaPolicyKind::closed_form && special_case != 1 && special_case != 0) {
    throw Error("closed-form alpha requires special case 1");
  }
}

const CellResult& MonteCarloResult::find(Aggregator a, double p_h, int degree) const {
  for (const auto& c : cells) {
    if (c.aggregator == a && c.p_h == p_h && c.degree == degree) return c;
  }
  throw Error("no cell (" + std::string(aggregator_name(a)) + ", p_h=" + std::to_string(p_h) +
              ", d=" + std::to_string(degree) + ")");
}

double mc_standard_error(double error_rate, std::uint64_t trials) {
  if (trials == 0) throw Error("standard error: zero trials");
  return std::sqrt(error_rate * (1.0 - error_rate) / static_cast<double>(trials));
}

namespace {

struct PlannedAggregator {
  AggregatorPlan plan;
  model::DeflectionTable deflections;
  std::optional<double> alpha;
  std::string note;
};

double closed_form_alpha(const model::GaussianClassModel& model, const model::TransitionMatrix& p) {
  if (p.order() != 2 || p(0, 0) != p(1, 1)) {
    throw Error("closed-form alpha requires a symmetric two-class transition matrix");
  }
  const auto g = model::pairwise_deflection(model.means(), model.covariance_factor());
  return classify::optimal_alpha_closed_form(p(0, 0), g(0, 1));
}

PlannedAggregator plan_wsa_like(Aggregator kind, const model::GaussianClassModel& model,
                                const model::TransitionMatrix& p, int d,
                                const classify::WsaWeightSums& sums, double self_w, double nb_w) {
  const model::DegreePriors priors(model.priors());
  const auto moments = classify::wsa_moments(model, p, sums, d);
  auto family = classify::build_wsa_classifier(moments, priors);
  PlannedAggregator out{AggregatorPlan{kind, std::move(family), {d}, self_w, nb_w},
                        classify::wsa_deflection(moments), std::nullopt, {}};
  return out;
}

PlannedAggregator plan_aggregator(Aggregator kind, const ExperimentConfig& config,
                                  const model::GaussianClassModel& model,
                                  const model::TransitionMatrix& p, int d) {
  const model::DegreePriors priors(model.priors());
  switch (kind) {
    case Aggregator::agnostic: {
      auto family = classify::bayes_graph_agnostic(model);
      return {AggregatorPlan{kind, std::move(family), {0}, 1.0, 0.0},
              model::pairwise_deflection(model.means(), model.covariance_factor(), {d}), std::nullopt, {}};
    }
    case Aggregator::wsa: {
      double alpha = config.alpha.value;
      if (config.alpha.kind == AlphaPolicyKind::closed_form) {
        alpha = closed_form_alpha(model, p);
      } else if (config.alpha.kind == AlphaPolicyKind::grid) {
        alpha = classify::optimize_alpha_grid(model, p, d, config.alpha.grid).alpha;
      }
      auto planned = plan_wsa_like(kind, model, p, d, classify::WsaWeightSums::uniform(alpha, d), 1.0, alpha);
      planned.alpha = alpha;
      return planned;
    }
    case Aggregator::gcn_baseline: {
      // neighbor degrees taken equal to d
      const double w = d > 0 ? 1.0 / d : 0.0;
      const double self_w = d > 0 ? 1.0 / d : 1.0;
      return plan_wsa_like(kind, model, p, d, {self_w, w * d, w * w * d}, self_w, w);
    }
    case Aggregator::gin_baseline: {
      const double self_w = d > 0 ? 1.0 + config.gin_eps : 1.0;
      return plan_wsa_like(kind, model, p, d, {self_w, 1.0 * d, 1.0 * d}, self_w, 1.0);
    }
    case Aggregator::sca:
    case Aggregator::sca_norm: {
      const auto moments = classify::sca_moments(model, p, d);
      auto family = classify::build_sca_classifier(moments, priors, kind == Aggregator::sca_norm);
      return {AggregatorPlan{kind, std::move(family), {d}, 1.0, 0.0}, classify::sca_deflection(moments),
              std::nullopt, {}};
    }
    case Aggregator::sca_k: {
      const DegreeKey profile(static_cast<std::size_t>(config.hops), d);
      auto family = classify::build_sca_khop_classifier(model, p, profile, config.hops, priors);
      const auto moments = classify::sca_khop_moments(model, p, profile);
      return {AggregatorPlan{kind, std::move(family), profile, 1.0, 0.0}, classify::sca_deflection(moments),
              std::nullopt, {}};
    }
  }
  throw Error("unhandled aggregator");
}

std::string reliability_note(std::uint64_t errors) {
  if (errors < kMinReliableErrors) {
    return "unreliable: " + std::to_string(errors) + " errors (< " + std::to_string(kMinReliableErrors) + ")";
  }
  return {};
}

std::string join_note(std::string a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "; " + b;
}

}  // namespace

namespace {

MonteCarloResult run_cells(const ExperimentConfig& config, Execution execution, bool simulate) {
  if (simulate) {
    config.validate();
  } else {
    ExperimentConfig relaxed = config;
    relaxed.trials = std::max<std::uint64_t>(relaxed.trials, 1000);
    relaxed.validate();
  }
  const auto model = make_model(config.model);

  std::vector<std::pair<double, model::TransitionMatrix>> grid;
  if (config.special_case == 0) {
    model::TransitionMatrix p(*config.transition);
    if (p.order() != model.num_classes()) throw Error("transition matrix order != M");
    grid.emplace_back(p.average_homophily(model.priors()), p);
  } else {
    for (double p_h : config.p_h_values) grid.emplace_back(p_h, special_case_transition(config.special_case, p_h));
  }

  std::vector<Aggregator> aggregators = config.aggregators;
  std::sort(aggregators.begin(), aggregators.end());
  aggregators.erase(std::unique(aggregators.begin(), aggregators.end()), aggregators.end());
  const bool any_khop = std::find(aggregators.begin(), aggregators.end(), Aggregator::sca_k) != aggregators.end();

  MonteCarloResult result;
  for (const auto& [p_h, p] : grid) {
    const synth::NeighborhoodSampler sampler(model, p, any_khop ? config.hops : 1);
    for (int d : config.degrees) {
      CellPlan plan;
      plan.sampler = &sampler;
      plan.degree = d;
      plan.seed = config.seed;
      plan.cell_key = synth::stream_key({static_cast<std::uint64_t>(config.special_case),
                                         std::bit_cast<std::uint64_t>(p_h), static_cast<std::uint64_t>(d)});
      if (any_khop) plan.khop_profile.assign(static_cast<std::size_t>(config.hops), d);

      std::vector<PlannedAggregator> planned;
      for (Aggregator a : aggregators) {
        try {
          planned.push_back(plan_aggregator(a, config, model, p, d));
        } catch (const Error& e) {
          result.failures.push_back({a, p_h, d, e.what()});
        }
      }
      if (planned.empty()) continue;
      for (auto& pa : planned) plan.aggregators.push_back(pa.plan);

      std::vector<std::uint64_t> errors;
      if (simulate) errors = count_errors(plan, config.trials, execution);
      for (std::size_t i = 0; i < planned.size(); ++i) {
        CellResult cell;
        cell.aggregator = planned[i].plan.aggregator;
        cell.special_case = config.special_case;
        cell.p_h = p_h;
        cell.degree = d;
        cell.bound = model::error_upper_bound_limit(planned[i].deflections, model.priors());
        cell.alpha_star = planned[i].alpha;
        if (simulate) {
          cell.trials = config.trials;
          cell.errors = errors[i];
          cell.error = static_cast<double>(errors[i]) / static_cast<double>(config.trials);
          cell.std_error = mc_standard_error(cell.error, config.trials);
          cell.note = join_note(planned[i].note, reliability_note(errors[i]));
        } else {
          cell.error = cell.std_error = std::numeric_limits<double>::quiet_NaN();
          cell.note = planned[i].note;
        }
        cell.deflections = planned[i].deflections;
        result.cells.push_back(std::move(cell));
      }
    }
  }

  auto order = [](const auto& a, const auto& b) {
    if (a.aggregator != b.aggregator) return a.aggregator < b.aggregator;
    if (a.p_h != b.p_h) return a.p_h < b.p_h;
    return a.degree < b.degree;
  };
  std::stable_sort(result.cells.begin(), result.cells.end(), order);
  std::stable_sort(result.failures.begin(), result.failures.end(), order);
  return result;
}

}  // namespace

MonteCarloResult run_monte_carlo(const ExperimentConfig& config, Execution execution) {
  return run_cells(config, execution, true);
}

MonteCarloResult evaluate_cells(const ExperimentConfig& config) {
  return run_cells(config, Execution::serial, false);
}

std::vector<AlphaRow> alpha_table(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.aggregators = {Aggregator::wsa};
  const auto model = make_model(c.model);
  const auto cells = evaluate_cells(c);
  if (!cells.failures.empty()) {
    const auto& f = cells.failures.front();
    throw Error("alpha search failed at p_h=" + std::to_string(f.p_h) + ", d=" + std::to_string(f.degree) +
                ": " + f.message);
  }
  std::vector<AlphaRow> rows;
  for (const auto& cell : cells.cells) {
    AlphaRow row{cell.special_case, cell.p_h, cell.degree, cell.alpha_star.value_or(0.0), cell.bound, std::nullopt};
    if (c.special_case == 1) row.closed_form = closed_form_alpha(model, special_case_transition(1, cell.p_h));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace graphsig::analysis
