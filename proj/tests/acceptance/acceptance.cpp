// Acceptance run: one PASS/FAIL line per criterion.
//   graphsig_acceptance [--expect-fail "criterion name"]...
// Exit status is 0 when the failed criteria are exactly the expected ones.

#include "graphsig/analysis/experiment.hpp"
#include "graphsig/analysis/homophily.hpp"
#include "graphsig/analysis/overlap.hpp"
#include "graphsig/analysis/kernels.hpp"
#include "graphsig/classify/alpha.hpp"
#include "graphsig/classify/classifier.hpp"
#include "graphsig/format.hpp"
#include "graphsig/synth/dcsbm.hpp"
#include "graphsig/synth/rng.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace graphsig;
using analysis::Aggregator;

namespace {

constexpr double kSigmas = 4.0;

double q_oracle(double a) { return 0.5 * std::erfc(a / std::sqrt(2.0)); }

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::set<std::string> expected_failures;
std::set<std::string> failed;
std::set<std::string> seen;

void report(const std::string& name, const std::function<Outcome()>& check) {
  seen.insert(name);
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) failed.insert(name);
  const bool expected = expected_failures.count(name) > 0;
  std::printf("%s %s: %s [%.1fs]%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs,
              expected ? (o.pass ? " (expected to fail)" : " (expected failure)") : "");
  std::fflush(stdout);
}

analysis::ExperimentConfig base_config(int special_case, int m, double gamma0) {
  analysis::ExperimentConfig c;
  c.special_case = special_case;
  c.model.num_classes = m;
  c.model.feature_dim = 20;
  c.model.sigma = 1.0;
  c.model.simplex_gamma0 = gamma0;
  return c;
}

double combined_se(const analysis::CellResult& a, const analysis::CellResult& b) {
  return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

Outcome agnostic_exactness() {
  auto c = base_config(1, 2, 4.0);
  c.p_h_values = {0.5};
  c.degrees = {0};
  c.aggregators = {Aggregator::agnostic};
  c.trials = 1000000;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = analysis::run_monte_carlo(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto& cell = r.cells.at(0);
  const double target = 0.158655;
  const double dev = std::abs(cell.error - target) / cell.std_error;
  return {dev <= kSigmas && secs < 30.0,
          "e=" + num(cell.error) + " target=" + num(target) + " |dev|=" + num(dev, 3) + " SE, runtime " +
              num(secs, 3) + "s"};
}

Outcome graph_gain() {
  auto c = base_config(1, 2, 1.0);
  c.p_h_values = {1.0};
  c.degrees = {1, 2, 4, 8};
  c.aggregators = {Aggregator::wsa};
  c.alpha.kind = analysis::AlphaPolicyKind::fixed;
  c.alpha.value = 1.0;
  c.trials = 1000000;
  const auto r = analysis::run_monte_carlo(c);
  bool ok = true;
  std::ostringstream os;
  for (const auto& cell : r.cells) {
    const double target = q_oracle(std::sqrt((cell.degree + 1) * 1.0) / 2.0);
    const double dev = std::abs(cell.error - target) / cell.std_error;
    ok = ok && dev <= kSigmas;
    os << "d=" << cell.degree << " e=" << num(cell.error) << " Q=" << num(target) << " (" << num(dev, 3)
       << " SE) ";
  }
  return {ok && r.cells.size() == 4, os.str()};
}

Outcome pure_heterophily() {
  auto c = base_config(1, 2, 1.0);
  c.degrees = {1, 2, 4, 8};
  c.aggregators = {Aggregator::wsa};
  c.alpha.kind = analysis::AlphaPolicyKind::fixed;
  c.trials = 1000000;
  c.p_h_values = {1.0};
  c.alpha.value = 1.0;
  const auto hom = analysis::run_monte_carlo(c);
  c.p_h_values = {0.0};
  c.alpha.value = -1.0;
  const auto het = analysis::run_monte_carlo(c);
  bool ok = true;
  std::ostringstream os;
  for (int d : c.degrees) {
    const auto& a = hom.find(Aggregator::wsa, 1.0, d);
    const auto& b = het.find(Aggregator::wsa, 0.0, d);
    const double dev = std::abs(a.error - b.error) / combined_se(a, b);
    ok = ok && dev <= kSigmas;
    os << "d=" << d << " hom=" << num(a.error) << " het=" << num(b.error) << " (" << num(dev, 3) << " SE) ";
  }
  return {ok, os.str()};
}

Outcome alpha_closed_form() {
  bool ok = true;
  double worst = 0.0;
  std::string mismatch;
  for (double gamma0 : {1.0, 10.0}) {
    analysis::ModelSpec spec;
    spec.num_classes = 2;
    spec.feature_dim = 20;
    spec.simplex_gamma0 = gamma0;
    const auto model = analysis::make_model(spec);
    for (int i = 0; i <= 10; ++i) {
      const double p_h = i / 10.0;
      const auto p = analysis::special_case_transition(1, p_h);
      const double closed = (2.0 * p_h - 1.0) / (1.0 + p_h * (1.0 - p_h) * gamma0);
      std::vector<double> optima;
      for (int d : {1, 4, 16}) optima.push_back(classify::optimize_alpha_grid(model, p, d).alpha);
      for (double a : optima) {
        worst = std::max(worst, std::abs(a - closed));
        if (std::abs(a - closed) > 0.005 + 1e-12) ok = false;
      }
      if (optima[0] != optima[1] || optima[0] != optima[2]) {
        ok = false;
        mismatch += " p_h=" + num(p_h, 2) + ",g0=" + num(gamma0, 3) + ":" + num(optima[0]) + "/" +
                    num(optima[1]) + "/" + num(optima[2]);
      }
    }
  }
  return {ok, "max |grid - closed form| = " + num(worst, 3) +
                  (mismatch.empty() ? ", grid optimum identical for d in {1,4,16}"
                                    : ", degree-dependent optimum at" + mismatch)};
}

Outcome sherman_morrison() {
  synth::CounterRng rng(synth::stream_key({0x5E12, 100}));
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const int f = 2 + static_cast<int>(rng.uniform() * 29);
    Matrix a(f, f);
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) a(i, j) = rng.normal();
    const Matrix c = a * a.transpose() / f + Matrix::Identity(f, f);
    Vector delta(f);
    for (int i = 0; i < f; ++i) delta(i) = rng.normal();
    const double alpha = 2.0 * rng.uniform() - 1.0;
    const int d = 1 + static_cast<int>(rng.uniform() * 20);
    const double p_h = rng.uniform();
    const double a2d = alpha * alpha * d;
    const Matrix rbar = (1.0 + a2d) * c + a2d * p_h * (1.0 - p_h) * delta * delta.transpose();
    const Matrix dense = rbar.fullPivLu().inverse();
    const Matrix sm = classify::sherman_morrison_pooled_inverse(c, delta, alpha, d, p_h);
    worst = std::max(worst, (sm - dense).norm() / dense.norm());
  }
  return {worst <= 1e-10, "max relative Frobenius error over 100 draws = " + num(worst, 3)};
}

Outcome sca_case3_deflection() {
  analysis::ModelSpec spec;
  spec.num_classes = 4;
  spec.feature_dim = 20;
  spec.simplex_gamma0 = 4.0;
  const auto model = analysis::make_model(spec);
  const auto p = analysis::special_case_transition(3, 1.0);
  double worst = 0.0;
  for (int d : {0, 1, 2, 4, 8, 16}) {
    const auto table = classify::sca_deflection(classify::sca_moments(model, p, d));
    worst = std::max(worst, std::abs(table(0, 1) - 4.0 * (1 + d)) / (4.0 * (1 + d)));
  }
  return {worst <= 1e-10, "max relative error of gamma_d(1,2) vs 4(1+d) = " + num(worst, 3)};
}

struct FourClassGrid {
  analysis::MonteCarloResult case2;
  analysis::MonteCarloResult case3;
};

const FourClassGrid& four_class_grid() {
  static const FourClassGrid grid = [] {
    FourClassGrid g;
    for (int sc : {2, 3}) {
      auto c = base_config(sc, 4, 4.0);
      for (int i = 0; i <= 20; ++i) c.p_h_values.push_back(i * 0.05);
      c.degrees = {1, 2, 4, 8};
      c.aggregators = {Aggregator::wsa, Aggregator::sca};
      c.trials = 100000;
      (sc == 2 ? g.case2 : g.case3) = analysis::run_monte_carlo(c);
    }
    return g;
  }();
  return grid;
}

Outcome sca_dominates_wsa() {
  const auto& g = four_class_grid();
  bool ok = true;
  int cells = 0;
  double worst = -INFINITY;
  std::string where;
  for (const auto* r : {&g.case2, &g.case3}) {
    if (!r->failures.empty()) return {false, "cell failure: " + r->failures.front().message};
    for (const auto& s : r->cells) {
      if (s.aggregator != Aggregator::sca) continue;
      const auto& w = r->find(Aggregator::wsa, s.p_h, s.degree);
      const double excess = (s.error - w.error) / combined_se(s, w);
      ++cells;
      if (excess > worst) {
        worst = excess;
        where = "case " + std::to_string(s.special_case) + " p_h=" + num(s.p_h, 3) + " d=" + std::to_string(s.degree);
      }
      if (excess > kSigmas) ok = false;
    }
  }
  const auto& s = g.case3.find(Aggregator::sca, 1.0, 1);
  const auto& w = g.case3.find(Aggregator::wsa, 1.0, 1);
  const double gap = (w.error - s.error) / combined_se(s, w);
  ok = ok && gap > 10.0 && cells == 2 * 21 * 4;
  return {ok, std::to_string(cells) + " cells, worst (sca - wsa) = " + num(worst, 3) + " SE at " + where +
                  "; case 3 p_h=1 d=1 gap = " + num(gap, 4) + " SE (sca " + num(s.error) + ", wsa " +
                  num(w.error) + ")"};
}

Outcome bound_validity() {
  const auto& g = four_class_grid();
  bool ok = true;
  int cells = 0;
  double worst = -INFINITY;
  std::string where;
  for (const auto* r : {&g.case2, &g.case3}) {
    for (const auto& c : r->cells) {
      ++cells;
      const double excess = (c.error - c.bound) / c.std_error;
      if (excess > worst) {
        worst = excess;
        where = std::string(analysis::aggregator_name(c.aggregator)) + " case " + std::to_string(c.special_case) +
                " p_h=" + num(c.p_h, 3) + " d=" + std::to_string(c.degree) + " (e=" + num(c.error) +
                ", bound=" + num(c.bound) + ")";
      }
      if (c.error > c.bound + kSigmas * c.std_error) ok = false;
    }
  }
  return {ok, std::to_string(cells) + " cells, max (e - bound)/SE = " + num(worst, 3) + " at " + where};
}

Outcome gcn_baseline() {
  auto c = base_config(1, 2, 4.0);
  c.p_h_values = {0.0};
  c.degrees = {1, 2, 4, 8};
  c.aggregators = {Aggregator::wsa, Aggregator::gcn_baseline, Aggregator::gin_baseline};
  c.alpha.kind = analysis::AlphaPolicyKind::closed_form;
  c.trials = 100000;
  const auto r = analysis::run_monte_carlo(c);
  bool ok = r.failures.empty();
  std::ostringstream os;
  for (int d : c.degrees) {
    const auto& w = r.find(Aggregator::wsa, 0.0, d);
    for (Aggregator b : {Aggregator::gcn_baseline, Aggregator::gin_baseline}) {
      const auto& cell = r.find(b, 0.0, d);
      const double gap = (cell.error - w.error) / combined_se(cell, w);
      ok = ok && gap > 10.0;
      os << analysis::aggregator_name(b) << " d=" << d << " gap=" << num(gap, 4) << " SE; ";
    }
  }
  return {ok, os.str()};
}

Outcome moments_vs_simulation() {
  analysis::ModelSpec spec;
  spec.num_classes = 2;
  spec.feature_dim = 20;
  spec.simplex_gamma0 = 4.0;
  const auto model = analysis::make_model(spec);
  const auto p = analysis::special_case_transition(1, 0.75);
  const int d = 3;
  const double alpha = 0.5;
  const synth::NeighborhoodSampler sampler(model, p);
  const model::DegreePriors priors(model.priors());

  const auto wsa = classify::wsa_moments(model, p, alpha, d);
  const auto sca = classify::sca_moments(model, p, d);
  analysis::CellPlan plan;
  plan.sampler = &sampler;
  plan.degree = d;
  plan.seed = analysis::kDefaultSeed;
  plan.cell_key = synth::stream_key({0x30E7, 1});
  plan.aggregators.push_back({Aggregator::wsa, classify::build_wsa_classifier(wsa, priors), {d}, 1.0, alpha});
  plan.aggregators.push_back({Aggregator::sca, classify::build_sca_classifier(sca, priors, false), {d}, 1.0, 0.0});

  double worst_mean = 0.0;
  double worst_cov = 0.0;
  for (std::size_t a = 0; a < 2; ++a) {
    const auto& th = a == 0 ? wsa : sca;
    const auto emp = analysis::representation_moments_parallel(plan, a, 1000000);
    for (int m = 0; m < 2; ++m) {
      const auto mi = static_cast<std::size_t>(m);
      worst_mean = std::max(worst_mean, (emp.means[mi] - th.class_means[mi]).norm() / th.class_means[mi].norm());
      worst_cov = std::max(worst_cov, (emp.covariances[mi] - th.class_covariances[mi]).norm() /
                                          th.class_covariances[mi].norm());
    }
  }
  return {worst_mean <= 0.01 && worst_cov <= 0.02,
          "WSA and SCA class moments: max mean rel. error " + num(worst_mean, 3) + ", max covariance rel. error " +
              num(worst_cov, 3)};
}

Outcome overlap_demo() {
  const auto panels = analysis::overlap_demo({});
  const double ub = panels[0].result.error;
  const double ua = panels[1].result.error;
  const double mb = panels[2].result.error;
  const double ma = panels[3].result.error;
  return {ua < ub && ma > mb, "unimodal " + num(ub) + " -> " + num(ua) + ", mixture " + num(mb) + " -> " + num(ma)};
}

Outcome dcsbm_consistency() {
  analysis::ModelSpec spec;
  spec.num_classes = 2;
  spec.feature_dim = 1;
  const auto model = analysis::make_model(spec);
  const auto p = analysis::special_case_transition(1, 0.8);
  const auto g = synth::generate_dcsbm(model, p, synth::ConstantDegree{10.0}, 100000, analysis::kDefaultSeed);
  const auto h = analysis::homophily_stats(g.graph);
  return {h.global >= 0.79 && h.global <= 0.81,
          "global p_h = " + num(h.global) + " over " + std::to_string(h.nodes_used) + " nodes, mean degree " +
              num(2.0 * static_cast<double>(g.graph.num_edges()) / g.graph.num_nodes(), 4)};
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expected_failures.insert(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail NAME]...\n", argv[0]);
      return 2;
    }
  }
  report("graph-agnostic exactness", agnostic_exactness);
  report("graph gain under pure homophily", graph_gain);
  report("pure heterophily matches homophily", pure_heterophily);
  report("optimal alpha grid vs closed form", alpha_closed_form);
  report("rank-one pooled inverse identity", sherman_morrison);
  report("four-class SCA deflection", sca_case3_deflection);
  report("SCA no worse than WSA", sca_dominates_wsa);
  report("union bound validity for M=4", bound_validity);
  report("GCN/GIN baselines under heterophily", gcn_baseline);
  report("representation moments vs simulation", moments_vs_simulation);
  report("density overlap demo", overlap_demo);
  report("DC-SBM homophily consistency", dcsbm_consistency);
  for (const auto& name : expected_failures) {
    if (seen.count(name) == 0) {
      std::printf("unknown criterion in --expect-fail: %s\n", name.c_str());
      return 1;
    }
  }
  std::printf("%zu of %zu criteria passed, %zu failed (%zu expected)\n", seen.size() - failed.size(), seen.size(),
              failed.size(), expected_failures.size());
  return failed == expected_failures ? 0 : 1;
}
