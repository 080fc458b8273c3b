#include "graphsig/synth/dcsbm.hpp"

#include "graphsig/model/decision.hpp"
#include "graphsig/synth/rng.hpp"
#include "graphsig/synth/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace graphsig::synth {

namespace {

constexpr std::uint64_t kLabelStream = 0x1ABE1ULL;
constexpr std::uint64_t kDegreeStream = 0xDE6ULL;
constexpr std::uint64_t kEdgeStream = 0xED6EULL;
constexpr std::uint64_t kFeatureStream = 0xFEA7ULL;

std::vector<double> draw_propensities(const DegreeSpec& spec, int n, std::uint64_t seed) {
  std::vector<double> theta(static_cast<std::size_t>(n));
  if (const auto* c = std::get_if<ConstantDegree>(&spec)) {
    if (!(c->degree >= 0.0) || !std::isfinite(c->degree)) throw Error("dcsbm: invalid constant degree");
    std::fill(theta.begin(), theta.end(), c->degree);
  } else if (const auto* e = std::get_if<ExplicitDegrees>(&spec)) {
    if (static_cast<int>(e->degrees.size()) != n) {
      throw Error("dcsbm: explicit degree list has " + std::to_string(e->degrees.size()) +
                  " entries for " + std::to_string(n) + " nodes");
    }
    for (double d : e->degrees) {
      if (!(d >= 0.0) || !std::isfinite(d)) throw Error("dcsbm: expected degrees must be finite and >= 0");
    }
    theta = e->degrees;
  } else {
    const auto& pl = std::get<PowerLawDegrees>(spec);
    if (!(pl.min > 0.0) || !(pl.max >= pl.min) || !std::isfinite(pl.max) || !(pl.exponent > 1.0)) {
      throw Error("dcsbm: power law needs exponent > 1 and 0 < min <= max");
    }
    // Inverse CDF of the truncated Pareto density.
    const double a = 1.0 - pl.exponent;
    const double lo = std::pow(pl.min, a);
    const double hi = std::pow(pl.max, a);
    for (int i = 0; i < n; ++i) {
      CounterRng rng{seed, kDegreeStream, static_cast<std::uint64_t>(i)};
      theta[static_cast<std::size_t>(i)] = std::pow(lo + rng.uniform() * (hi - lo), 1.0 / a);
    }
  }
  return theta;
}

}  // namespace

DcsbmGraph generate_dcsbm(const model::GaussianClassModel& model, const model::TransitionMatrix& p,
                          const DegreeSpec& degrees, int num_nodes, std::uint64_t seed) {
  if (num_nodes < 2) throw Error("dcsbm: need at least two nodes");
  const auto diag = model::validate_model(model, p);
  if (!diag.balanced) {
    throw Error("dcsbm: the model violates detailed balance (pi_m p_ml != pi_l p_lm); "
                "an undirected graph cannot realize it");
  }
  const int m_count = model.num_classes();
  const auto n = static_cast<std::size_t>(num_nodes);

  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng{seed, kLabelStream, i};
    labels[i] = draw_category(model.priors(), rng);
  }
  const std::vector<double> theta = draw_propensities(degrees, num_nodes, seed);

  std::vector<std::vector<int>> members(static_cast<std::size_t>(m_count));
  for (std::size_t i = 0; i < n; ++i) members[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));
  for (auto& block : members) {
    std::stable_sort(block.begin(), block.end(), [&](int a, int b) {
      return theta[static_cast<std::size_t>(a)] > theta[static_cast<std::size_t>(b)];
    });
  }
  std::vector<double> mass(static_cast<std::size_t>(m_count), 0.0);
  for (std::size_t i = 0; i < n; ++i) mass[static_cast<std::size_t>(labels[i])] += theta[i];
  const double volume = std::accumulate(mass.begin(), mass.end(), 0.0);

  DcsbmReport report;
  report.total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::vector<std::vector<int>> adjacency(n);

  for (int r = 0; r < m_count; ++r) {
    for (int s = r; s < m_count; ++s) {
      const double mr = mass[static_cast<std::size_t>(r)];
      const double ms = mass[static_cast<std::size_t>(s)];
      const double affinity = (mr > 0.0 && ms > 0.0)
                                  ? model.prior(r) * p(r, s) * volume / (mr * ms)
                                  : 0.0;
      if (affinity <= 0.0) continue;
      const auto& a_nodes = members[static_cast<std::size_t>(r)];
      const auto& b_nodes = members[static_cast<std::size_t>(s)];
      std::vector<double> b_theta(b_nodes.size());
      for (std::size_t j = 0; j < b_nodes.size(); ++j) b_theta[j] = theta[static_cast<std::size_t>(b_nodes[j])];

      std::vector<std::vector<int>> found(a_nodes.size());
      std::uint64_t clamped = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : clamped)
      for (std::int64_t ui = 0; ui < static_cast<std::int64_t>(a_nodes.size()); ++ui) {
        const int u = a_nodes[static_cast<std::size_t>(ui)];
        const double tu = theta[static_cast<std::size_t>(u)];
        const std::size_t start = (r == s) ? static_cast<std::size_t>(ui) + 1 : 0;
        if (tu <= 0.0 || start >= b_nodes.size()) continue;

        // Pairs with theta_u theta_v affinity > 1 form a prefix of b.
        const double threshold = 1.0 / (tu * affinity);
        const auto over = static_cast<std::size_t>(
            std::upper_bound(b_theta.begin(), b_theta.end(), threshold, std::greater<>()) -
            b_theta.begin());
        if (over > start) clamped += over - start;

        // Geometric skipping over the descending-propensity list.
        CounterRng rng{seed, kEdgeStream, static_cast<std::uint64_t>(r),
                       static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(ui)};
        auto& out = found[static_cast<std::size_t>(ui)];
        std::size_t j = start;
        double prob = std::min(1.0, tu * b_theta[j] * affinity);
        while (j < b_nodes.size() && prob > 0.0) {
          if (prob < 1.0) {
            const double skip = std::floor(std::log(rng.uniform_open0()) / std::log1p(-prob));
            if (skip >= static_cast<double>(b_nodes.size() - j)) break;
            j += static_cast<std::size_t>(skip);
          }
          const double q = std::min(1.0, tu * b_theta[j] * affinity);
          if (rng.uniform() < q / prob) out.push_back(b_nodes[j]);
          prob = q;
          ++j;
        }
      }
      report.clamped_pairs += clamped;
      for (std::size_t ui = 0; ui < a_nodes.size(); ++ui) {
        const int u = a_nodes[ui];
        for (int v : found[ui]) {
          adjacency[static_cast<std::size_t>(u)].push_back(v);
          adjacency[static_cast<std::size_t>(v)].push_back(u);
        }
      }
    }
  }
  if (static_cast<double>(report.clamped_pairs) >
      kMaxClampedFraction * static_cast<double>(report.total_pairs)) {
    std::ostringstream os;
    os << "dcsbm: " << report.clamped_pairs << " of " << report.total_pairs
       << " node pairs need an edge probability above 1; use smaller expected degrees or more nodes";
    throw Error(os.str());
  }
  for (auto& nb : adjacency) std::sort(nb.begin(), nb.end());

  const FeatureSampler sampler(model);
  Matrix features(static_cast<Eigen::Index>(n), model.feature_dim());
  Vector x(model.feature_dim());
#pragma omp parallel for schedule(static) firstprivate(x)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    CounterRng rng{seed, kFeatureStream, static_cast<std::uint64_t>(i)};
    sampler.draw(labels[static_cast<std::size_t>(i)], rng, x);
    features.row(i) = x.transpose();
  }

  LabeledGraph graph(std::move(adjacency), std::move(labels), m_count, {}, std::move(features));
  return DcsbmGraph{std::move(graph), theta, report};
}

}  // namespace graphsig::synth
