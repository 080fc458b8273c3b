#include "doctest.h"
#include "support.hpp"

#include "graphsig/analysis/homophily.hpp"

#include <cmath>
#include <sstream>

using namespace graphsig;
using namespace graphsig::analysis;

namespace {

synth::LabeledGraph load(const std::string& edges, const std::string& labels, bool allow_unlabeled = false) {
  std::istringstream e(edges);
  std::istringstream l(labels);
  synth::LoadOptions opts;
  opts.allow_unlabeled = allow_unlabeled;
  return synth::load_graph(e, l, nullptr, opts).graph;
}

}  // namespace

TEST_CASE("triangle with one odd label") {
  // a - b - c - a, labels 1 1 2; a node with two same-label neighbors of three
  const auto g = load("1 2\n2 3\n3 1\n1 4\n", "1,1\n2,1\n3,2\n4,1\n");
  const auto r = homophily_stats(g);
  CHECK(r.kappa[0] == doctest::Approx(2.0 / 3.0));
  CHECK(r.kappa[1] == doctest::Approx(0.5));
  CHECK(r.kappa[2] == 0.0);
  CHECK(r.kappa[3] == 1.0);
}

TEST_CASE("five-node fixture per-degree statistics") {
  const auto g = load("10 20\n20 30\n10 40\n20 50\n40 50\n", "10,7\n20,7\n30,9\n40,9\n50,7\n");
  for (auto exec : {Execution::serial, Execution::parallel}) {
    const auto r = homophily_stats(g, exec);
    REQUIRE(r.per_degree.size() == 3);
    CHECK(r.per_degree[0].degree == 1);
    CHECK(r.per_degree[0].count == 1);
    CHECK(r.per_degree[0].mean == 0.0);
    CHECK(r.per_degree[1].degree == 2);
    CHECK(r.per_degree[1].count == 3);
    CHECK(r.per_degree[1].mean == doctest::Approx(1.0 / 3.0));
    CHECK(r.per_degree[1].std_dev == doctest::Approx(std::sqrt(1.0 / 18.0)));
    CHECK(r.per_degree[2].mean == doctest::Approx(2.0 / 3.0));
    CHECK(r.per_degree[2].std_dev == 0.0);
    CHECK(r.global == doctest::Approx(1.0 / 3.0));
    CHECK(r.nodes_used == 5);
  }
}

TEST_CASE("all edges crossing gives zero homophily") {
  const auto g = load("1 2\n2 3\n3 4\n4 1\n", "1,0\n2,1\n3,0\n4,1\n");
  const auto r = homophily_stats(g);
  CHECK(r.global == 0.0);
  for (double k : r.kappa) CHECK(k == 0.0);
}

TEST_CASE("isolated and unlabeled nodes are excluded") {
  const auto g = load("1 2\n2 3\n4\n", "1,0\n2,0\n4,1\n", true);
  const auto r = homophily_stats(g);
  CHECK(r.kappa[0] == 1.0);
  CHECK(r.kappa[1] == 1.0);
  CHECK(std::isnan(r.kappa[2]));
  CHECK(std::isnan(r.kappa[3]));
  CHECK(r.nodes_used == 2);
}

TEST_CASE("graphs without edges or defined homophily are rejected") {
  const auto lonely = load("1\n2\n", "1,0\n2,1\n");
  CHECK_THROWS_AS(homophily_stats(lonely), Error);
  const auto unlabeled = load("1 2\n", "", true);
  CHECK_THROWS_AS(homophily_stats(unlabeled), Error);
}

TEST_CASE("property: global homophily is the count-weighted mean of per-degree means") {
  synth::CounterRng rng(synth::stream_key({0x40F, 1}));
  for (int trial = 0; trial < 10; ++trial) {
    std::ostringstream edges;
    std::ostringstream labels;
    const int n = 80;
    for (int e = 0; e < 150; ++e) {
      const int u = 1 + static_cast<int>(rng.uniform() * n);
      const int v = 1 + static_cast<int>(rng.uniform() * n);
      edges << u << " " << v << "\n";
    }
    for (int i = 1; i <= n; ++i) edges << i << "\n";
    for (int i = 1; i <= n; ++i) labels << i << "," << static_cast<int>(rng.uniform() * 3) << "\n";
    const auto r = homophily_stats(load(edges.str(), labels.str()));
    double weighted = 0.0;
    std::size_t total = 0;
    for (const auto& d : r.per_degree) {
      weighted += static_cast<double>(d.count) * d.mean;
      total += d.count;
      CHECK(d.mean >= 0.0);
      CHECK(d.mean <= 1.0);
    }
    CHECK(total == r.nodes_used);
    CHECK(r.global == doctest::Approx(weighted / static_cast<double>(total)).epsilon(1e-12));
  }
}
