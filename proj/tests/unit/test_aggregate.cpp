#include "doctest.h"
#include "support.hpp"

#include "graphsig/aggregate/aggregate.hpp"

using namespace graphsig;
using namespace graphsig::aggregate;

namespace {

Matrix columns(std::initializer_list<std::initializer_list<double>> cols) {
  const auto f = static_cast<Eigen::Index>(cols.begin()->size());
  Matrix m(f, static_cast<Eigen::Index>(cols.size()));
  Eigen::Index j = 0;
  for (const auto& c : cols) {
    Eigen::Index i = 0;
    for (double v : c) m(i++, j) = v;
    ++j;
  }
  return m;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("wsa_aggregate examples") {
  const Vector x = vec({1.0, 2.0});
  const Matrix nb = columns({{3.0, 0.0}, {-1.0, 4.0}});
  CHECK(wsa_aggregate(x, nb, UniformAlpha{0.5}).values.isApprox(vec({2.0, 4.0})));
  CHECK(wsa_aggregate(x, nb, UniformAlpha{0.0}).values == x);
  CHECK(wsa_aggregate(x, nb, GinWeights{0.5}).values.isApprox(vec({3.5, 7.0})));
  const std::vector<int> deg = {2, 8};
  CHECK(wsa_aggregate(x, nb, GcnWeights{}, deg).values.isApprox(vec({0.5 + 3.0 / 2.0 - 1.0 / 4.0, 1.0 + 1.0})));
  CHECK(wsa_aggregate(x, nb, CustomWeights{2.0, {1.0, -1.0}}).values.isApprox(vec({6.0, 0.0})));
  CHECK(wsa_aggregate(x, nb, UniformAlpha{0.5}).degree_profile == DegreeKey{2});
}

TEST_CASE("degree zero resolves to the passthrough for every scheme") {
  const Vector x = vec({1.0, -3.0});
  const Matrix none(2, 0);
  for (const AggregationWeights& w :
       std::vector<AggregationWeights>{UniformAlpha{0.7}, GcnWeights{}, GinWeights{2.0}, CustomWeights{5.0, {}}}) {
    CHECK(wsa_aggregate(x, none, w).values == x);
  }
  const auto sca = sca_aggregate(x, none, true);
  CHECK(sca.degenerate);
  CHECK(sca.values.head(2) == x);
  CHECK(sca.values.tail(2).isZero());
}

TEST_CASE("aggregation errors") {
  const Vector x = vec({1.0, 2.0});
  const Matrix nb = columns({{1.0, 1.0}});
  CHECK_THROWS_AS(wsa_aggregate(x, nb, GcnWeights{}), Error);
  CHECK_THROWS_AS(wsa_aggregate(x, nb, CustomWeights{1.0, {1.0, 2.0}}), Error);
  CHECK_THROWS_AS(wsa_aggregate(x, columns({{1.0, 2.0, 3.0}}), UniformAlpha{1.0}), Error);
  const std::vector<int> zero_deg = {0};
  CHECK_THROWS_AS(wsa_aggregate(x, nb, GcnWeights{}, zero_deg), Error);
  CHECK_THROWS_AS(resolve_weights(UniformAlpha{}, -1, {}), Error);
  CHECK_THROWS_AS(sca_khop_aggregate(x, {}), Error);
}

TEST_CASE("sca_aggregate concatenates the focal features with the neighbor sum or mean") {
  const Vector x = vec({1.0, 2.0});
  const Matrix nb = columns({{3.0, 0.0}, {-1.0, 4.0}, {1.0, 2.0}});
  CHECK(sca_aggregate(x, nb, false).values.isApprox(vec({1.0, 2.0, 3.0, 6.0})));
  CHECK(sca_aggregate(x, nb, true).values.isApprox(vec({1.0, 2.0, 1.0, 2.0})));
  CHECK(sca_aggregate(x, nb, false).values.size() == 4);
  CHECK_FALSE(sca_aggregate(x, nb, false).degenerate);
}

TEST_CASE("sca_khop_aggregate stacks one sum per hop") {
  const Vector x = vec({1.0});
  const auto rep = sca_khop_aggregate(x, {columns({{2.0}, {3.0}}), Matrix(1, 0), columns({{-1.0}})});
  CHECK(rep.values.isApprox(vec({1.0, 5.0, 0.0, -1.0})));
  CHECK(rep.degree_profile == DegreeKey{2, 0, 1});
  CHECK(rep.degenerate);
}

TEST_CASE("property: WSA is a linear projection of SCA") {
  synth::CounterRng rng(synth::stream_key({0xA6, 1}));
  for (int trial = 0; trial < 20; ++trial) {
    const int f = 1 + trial % 5;
    const int d = trial % 7;
    const double alpha = 2.0 * rng.uniform() - 1.0;
    const Vector x = test::random_vector(f, rng);
    Matrix nb(f, d);
    for (int j = 0; j < d; ++j) nb.col(j) = test::random_vector(f, rng);
    const Vector z = sca_aggregate(x, nb, false).values;
    Matrix proj(f, 2 * f);
    proj << Matrix::Identity(f, f), alpha * Matrix::Identity(f, f);
    CHECK((proj * z - wsa_aggregate(x, nb, UniformAlpha{alpha}).values).norm() <= 1e-12);
    Vector out(f);
    wsa_into(x, nb, 1.0, alpha, out);
    CHECK((out - proj * z).norm() <= 1e-12);
  }
}

TEST_CASE("property: aggregation does not depend on neighbor order") {
  synth::CounterRng rng(synth::stream_key({0xA6, 2}));
  for (int trial = 0; trial < 10; ++trial) {
    const int f = 3;
    const int d = 2 + trial;
    const Vector x = test::random_vector(f, rng);
    Matrix nb(f, d);
    for (int j = 0; j < d; ++j) nb.col(j) = test::random_vector(f, rng);
    const Matrix reversed = nb.rowwise().reverse();
    CHECK((sca_aggregate(x, nb, true).values - sca_aggregate(x, reversed, true).values).norm() <= 1e-12);
    CHECK((wsa_aggregate(x, nb, GinWeights{0.3}).values - wsa_aggregate(x, reversed, GinWeights{0.3}).values)
              .norm() <= 1e-12);
  }
}
