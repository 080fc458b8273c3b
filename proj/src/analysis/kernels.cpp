#include "graphsig/analysis/kernels.hpp"

#include "graphsig/aggregate/aggregate.hpp"

#include <cmath>
#include <limits>

namespace graphsig::analysis {

namespace {

bool needs_hops(const CellPlan& plan) {
  for (const auto& a : plan.aggregators) {
    if (a.aggregator == Aggregator::sca_k) return true;
  }
  return false;
}

/// Per-thread scratch: one sampled neighborhood plus one representation
/// buffer per aggregator.
class TrialWorkspace {
 public:
  explicit TrialWorkspace(const CellPlan& plan) : plan_(plan), hops_(needs_hops(plan)) {
    if (plan.sampler == nullptr) throw Error("cell plan has no sampler");
    if (plan.aggregators.empty()) throw Error("cell plan has no aggregators");
    if (hops_) {
      if (plan.khop_profile.empty() || plan.khop_profile.front() != plan.degree) {
        throw Error("cell plan: k-hop profile must start at the cell degree");
      }
      if (static_cast<int>(plan.khop_profile.size()) > plan.sampler->max_hops()) {
        throw Error("cell plan: sampler was built with too few hops");
      }
    }
    const int m_count = plan.sampler->model().num_classes();
    for (const auto& a : plan.aggregators) {
      if (a.family.num_classes() != m_count) throw Error("cell plan: classifier class count mismatch");
      blocks_.push_back(&a.family.at(a.key));
      reps_.emplace_back(Vector::Zero(a.family.dim()));
    }
    scores_.resize(m_count);
  }

  void draw(std::uint64_t trial) {
    plan_.sampler->sample(plan_.seed, plan_.cell_key, trial, plan_.degree, sample_);
    if (hops_) {
      plan_.sampler->sample_higher_hops(plan_.seed, plan_.cell_key, trial, sample_.focal_label,
                                        plan_.khop_profile, shells_);
    }
  }

  [[nodiscard]] int label() const { return sample_.focal_label; }

  const Vector& represent(std::size_t a) {
    const AggregatorPlan& ap = plan_.aggregators[a];
    Vector& z = reps_[a];
    const Vector& x = sample_.focal_feature;
    const Matrix& nb = sample_.neighbor_features;
    switch (ap.aggregator) {
      case Aggregator::agnostic:
        z = x;
        break;
      case Aggregator::wsa:
      case Aggregator::gcn_baseline:
      case Aggregator::gin_baseline:
        aggregate::wsa_into(x, nb, ap.self_weight, ap.neighbor_weight, z);
        break;
      case Aggregator::sca:
        aggregate::sca_into(x, nb, false, z);
        break;
      case Aggregator::sca_norm:
        aggregate::sca_into(x, nb, true, z);
        break;
      case Aggregator::sca_k: {
        const auto f = x.size();
        z.head(f) = x;
        z.segment(f, f) = nb.rowwise().sum();
        for (std::size_t k = 0; k + 1 < plan_.khop_profile.size(); ++k) {
          z.segment(static_cast<Eigen::Index>(k + 2) * f, f) = shells_[k].features.rowwise().sum();
        }
        break;
      }
    }
    return z;
  }

  int predict(std::size_t a) {
    const Vector& z = represent(a);
    const auto& block = *blocks_[a];
    scores_.noalias() = block.weights * z;
    scores_ += block.biases;
    return classify::argmax_first(scores_);
  }

 private:
  const CellPlan& plan_;
  bool hops_;
  synth::NeighborhoodSample sample_;
  std::vector<synth::HopShell> shells_;
  std::vector<const classify::ClassifierBlock*> blocks_;
  std::vector<Vector> reps_;
  Vector scores_;
};

struct ChunkSums {
  std::vector<std::uint64_t> counts;
  std::vector<Vector> first;
  std::vector<Matrix> second;
};

ChunkSums empty_sums(int m_count, Eigen::Index dim, bool with_second) {
  ChunkSums s;
  s.counts.assign(static_cast<std::size_t>(m_count), 0);
  s.first.assign(static_cast<std::size_t>(m_count), Vector::Zero(dim));
  if (with_second) s.second.assign(static_cast<std::size_t>(m_count), Matrix::Zero(dim, dim));
  return s;
}

/// Sums over trials [begin, end). Pass 1 collects first moments, pass 2
/// collects centered second moments around `centers`.
void accumulate_chunk(TrialWorkspace& ws, std::size_t a, std::uint64_t begin, std::uint64_t end,
                      const std::vector<Vector>* centers, ChunkSums& out) {
  for (std::uint64_t t = begin; t < end; ++t) {
    ws.draw(t);
    const auto y = static_cast<std::size_t>(ws.label());
    const Vector& z = ws.represent(a);
    if (centers == nullptr) {
      ++out.counts[y];
      out.first[y] += z;
    } else {
      const Vector c = z - (*centers)[y];
      out.second[y].noalias() += c * c.transpose();
    }
  }
}

EmpiricalMoments representation_moments(const CellPlan& plan, std::size_t a, std::uint64_t trials,
                                        bool parallel) {
  if (a >= plan.aggregators.size()) throw Error("moments: aggregator index out of range");
  const TrialWorkspace probe(plan);
  const int m_count = plan.sampler->model().num_classes();
  const Eigen::Index dim = plan.aggregators[a].family.dim();
  const auto chunks = static_cast<std::int64_t>((trials + kMomentChunk - 1) / kMomentChunk);

  auto run_pass = [&](const std::vector<Vector>* centers) {
    std::vector<ChunkSums> partial(static_cast<std::size_t>(chunks));
    auto body = [&](TrialWorkspace& ws, std::int64_t c) {
      const auto begin = static_cast<std::uint64_t>(c) * kMomentChunk;
      const auto end = std::min(trials, begin + kMomentChunk);
      auto& sums = partial[static_cast<std::size_t>(c)];
      sums = empty_sums(m_count, dim, centers != nullptr);
      accumulate_chunk(ws, a, begin, end, centers, sums);
    };
    if (parallel) {
#pragma omp parallel
      {
        TrialWorkspace ws(plan);
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t c = 0; c < chunks; ++c) body(ws, c);
      }
    } else {
      TrialWorkspace ws(plan);
      for (std::int64_t c = 0; c < chunks; ++c) body(ws, c);
    }
    ChunkSums total = empty_sums(m_count, dim, centers != nullptr);
    for (const auto& p : partial) {
      for (std::size_t m = 0; m < total.counts.size(); ++m) {
        total.counts[m] += p.counts[m];
        total.first[m] += p.first[m];
        if (centers != nullptr) total.second[m] += p.second[m];
      }
    }
    return total;
  };

  const ChunkSums first = run_pass(nullptr);
  EmpiricalMoments out;
  out.counts = first.counts;
  for (std::size_t m = 0; m < first.counts.size(); ++m) {
    const double n = static_cast<double>(first.counts[m]);
    out.means.push_back(n > 0 ? Vector(first.first[m] / n)
                              : Vector::Constant(dim, std::numeric_limits<double>::quiet_NaN()));
  }
  const ChunkSums second = run_pass(&out.means);
  for (std::size_t m = 0; m < first.counts.size(); ++m) {
    const double n = static_cast<double>(first.counts[m]);
    out.covariances.push_back(n > 0 ? Matrix(second.second[m] / n)
                                    : Matrix::Constant(dim, dim, std::numeric_limits<double>::quiet_NaN()));
  }
  return out;
}

double kappa(const synth::LabeledGraph& graph, int i) {
  const int y = graph.label(i);
  if (y == synth::kUnlabeled) return std::numeric_limits<double>::quiet_NaN();
  int labeled = 0;
  int same = 0;
  for (int j : graph.neighbors(i)) {
    const int yj = graph.label(j);
    if (yj == synth::kUnlabeled) continue;
    ++labeled;
    if (yj == y) ++same;
  }
  if (labeled == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(same) / labeled;
}

}  // namespace

std::vector<std::uint64_t> count_errors_serial(const CellPlan& plan, std::uint64_t trials) {
  TrialWorkspace ws(plan);
  std::vector<std::uint64_t> errors(plan.aggregators.size(), 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    ws.draw(t);
    for (std::size_t a = 0; a < errors.size(); ++a) {
      if (ws.predict(a) != ws.label()) ++errors[a];
    }
  }
  return errors;
}

std::vector<std::uint64_t> count_errors_parallel(const CellPlan& plan, std::uint64_t trials) {
  const TrialWorkspace probe(plan);
  const std::size_t n_agg = plan.aggregators.size();
  std::vector<std::uint64_t> errors(n_agg, 0);
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel
  {
    TrialWorkspace ws(plan);
    std::vector<std::uint64_t> local(n_agg, 0);
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < n; ++t) {
      ws.draw(static_cast<std::uint64_t>(t));
      for (std::size_t a = 0; a < n_agg; ++a) {
        if (ws.predict(a) != ws.label()) ++local[a];
      }
    }
#pragma omp critical(graphsig_count_errors)
    for (std::size_t a = 0; a < n_agg; ++a) errors[a] += local[a];
  }
  return errors;
}

std::vector<std::uint64_t> count_errors(const CellPlan& plan, std::uint64_t trials, Execution execution) {
  return execution == Execution::serial ? count_errors_serial(plan, trials)
                                        : count_errors_parallel(plan, trials);
}

EmpiricalMoments representation_moments_serial(const CellPlan& plan, std::size_t aggregator_index,
                                               std::uint64_t trials) {
  return representation_moments(plan, aggregator_index, trials, false);
}

EmpiricalMoments representation_moments_parallel(const CellPlan& plan, std::size_t aggregator_index,
                                                 std::uint64_t trials) {
  return representation_moments(plan, aggregator_index, trials, true);
}

std::vector<double> node_homophily_serial(const synth::LabeledGraph& graph) {
  std::vector<double> out(static_cast<std::size_t>(graph.num_nodes()));
  for (int i = 0; i < graph.num_nodes(); ++i) out[static_cast<std::size_t>(i)] = kappa(graph, i);
  return out;
}

std::vector<double> node_homophily_parallel(const synth::LabeledGraph& graph) {
  std::vector<double> out(static_cast<std::size_t>(graph.num_nodes()));
  const int n = graph.num_nodes();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = kappa(graph, i);
  return out;
}

}  // namespace graphsig::analysis
