#include "graphsig/analysis/experiment.hpp"
#include "graphsig/analysis/kernels.hpp"
#include "graphsig/classify/moments.hpp"
#include "graphsig/synth/dcsbm.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

#include <algorithm>

using namespace graphsig;
using namespace graphsig::analysis;

namespace {

struct CellFixture {
  model::GaussianClassModel model = make_model({4, 20, 1.0, std::nullopt, std::nullopt, 4.0});
  model::TransitionMatrix p = special_case_transition(3, 0.7);
  synth::NeighborhoodSampler sampler{model, p, 2};
  CellPlan plan;

  explicit CellFixture(int d) {
    const model::DegreePriors priors(model.priors());
    plan.sampler = &sampler;
    plan.degree = d;
    plan.khop_profile = {d, d};
    plan.seed = kDefaultSeed;
    plan.cell_key = synth::stream_key({3, static_cast<std::uint64_t>(d)});
    plan.aggregators.push_back({Aggregator::agnostic, classify::bayes_graph_agnostic(model), {0}, 1.0, 0.0});
    plan.aggregators.push_back(
        {Aggregator::wsa,
         classify::build_wsa_classifier(classify::wsa_moments(model, p, 0.3, d), priors), {d}, 1.0, 0.3});
    plan.aggregators.push_back(
        {Aggregator::sca, classify::build_sca_classifier(classify::sca_moments(model, p, d), priors, false), {d}});
  }
};

const CellFixture& cell() {
  static const CellFixture fx(8);
  return fx;
}

const synth::LabeledGraph& graph() {
  static const auto g = [] {
    const auto model = make_model({2, 4, 1.0, std::nullopt, std::nullopt, 4.0});
    return synth::generate_dcsbm(model, special_case_transition(1, 0.8), synth::ConstantDegree{10.0}, 200000, 1)
        .graph;
  }();
  return g;
}

constexpr std::uint64_t kTrials = 20000;

void threads_arg(benchmark::internal::Benchmark* b) {
  for (int t = 1; t <= std::max(4, omp_get_num_procs()); t *= 2) b->Arg(t);
}

void BM_CountErrorsSerial(benchmark::State& state) {
  const auto& fx = cell();
  for (auto _ : state) benchmark::DoNotOptimize(count_errors_serial(fx.plan, kTrials));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kTrials));
}

void BM_CountErrorsParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto& fx = cell();
  for (auto _ : state) benchmark::DoNotOptimize(count_errors_parallel(fx.plan, kTrials));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kTrials));
}

void BM_MomentsSerial(benchmark::State& state) {
  const auto& fx = cell();
  for (auto _ : state) benchmark::DoNotOptimize(representation_moments_serial(fx.plan, 2, kTrials));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kTrials));
}

void BM_MomentsParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto& fx = cell();
  for (auto _ : state) benchmark::DoNotOptimize(representation_moments_parallel(fx.plan, 2, kTrials));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kTrials));
}

void BM_NodeHomophilySerial(benchmark::State& state) {
  const auto& g = graph();
  for (auto _ : state) benchmark::DoNotOptimize(node_homophily_serial(g));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * g.num_nodes());
}

void BM_NodeHomophilyParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto& g = graph();
  for (auto _ : state) benchmark::DoNotOptimize(node_homophily_parallel(g));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * g.num_nodes());
}

}  // namespace

BENCHMARK(BM_CountErrorsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CountErrorsParallel)->Apply(threads_arg)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MomentsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MomentsParallel)->Apply(threads_arg)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NodeHomophilySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NodeHomophilyParallel)->Apply(threads_arg)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
