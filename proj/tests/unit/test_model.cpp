#include "doctest.h"
#include "support.hpp"

#include "graphsig/model/decision.hpp"
#include "graphsig/model/linalg.hpp"
#include "graphsig/model/types.hpp"

using namespace graphsig;
using namespace graphsig::model;

TEST_CASE("SpdFactor solves and reports singular matrices by name") {
  Matrix c(2, 2);
  c << 4, 1, 1, 3;
  const SpdFactor f(c, "C");
  Vector b(2);
  b << 1, 2;
  CHECK((c * f.solve(b) - b).norm() < 1e-12);
  CHECK(f.inverse_quadratic(b) == doctest::Approx(b.dot(c.inverse() * b)).epsilon(1e-12));

  Matrix s(2, 2);
  s << 1, 1, 1, 1;
  try {
    SpdFactor bad(s, "pooled covariance");
    FAIL("expected a singular-matrix error");
  } catch (const SingularMatrixError& e) {
    CHECK(std::string(e.what()).find("pooled covariance") != std::string::npos);
  }
}

TEST_CASE("GaussianClassModel validation") {
  const std::vector<Vector> means = {Vector::Constant(2, 1.0), Vector::Constant(2, -1.0)};
  CHECK_NOTHROW(GaussianClassModel::isotropic(Vector::Constant(2, 0.5), means, 1.0));
  Vector bad_priors(2);
  bad_priors << 0.5, 0.6;
  CHECK_THROWS_AS(GaussianClassModel::isotropic(bad_priors, means, 1.0), Error);
  Vector zero_prior(2);
  zero_prior << 1.0, 0.0;
  CHECK_THROWS_AS(GaussianClassModel::isotropic(zero_prior, means, 1.0), Error);
  CHECK_THROWS_AS(GaussianClassModel::isotropic(Vector::Constant(2, 0.5), {Vector::Zero(2), Vector::Zero(3)}, 1.0),
                  Error);
  Matrix asym(2, 2);
  asym << 1, 0.5, 0.4, 1;
  CHECK_THROWS_AS(GaussianClassModel(Vector::Constant(2, 0.5), means, asym), Error);
  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK_THROWS_AS(GaussianClassModel(Vector::Constant(2, 0.5), means, indefinite), Error);
}

TEST_CASE("TransitionMatrix rows must be probability vectors") {
  Matrix p(2, 2);
  p << 0.8, 0.2, 0.2, 0.8;
  CHECK_NOTHROW(TransitionMatrix{p});
  p(0, 1) = 0.3;
  CHECK_THROWS_AS(TransitionMatrix{p}, Error);
  p << 1.2, -0.2, 0.5, 0.5;
  CHECK_THROWS_AS(TransitionMatrix{p}, Error);
  p << 0.8, 0.2 + 1e-10, 0.2, 0.8;
  CHECK_THROWS_AS(TransitionMatrix{p}, Error);
}

TEST_CASE("DeflectionTable requires a symmetric nonnegative zero-diagonal table") {
  Matrix g(2, 2);
  g << 0, 4, 4, 0;
  CHECK_NOTHROW(DeflectionTable({1}, g));
  g(0, 0) = 1;
  CHECK_THROWS_AS(DeflectionTable({1}, g), Error);
  g << 0, 4, 3, 0;
  CHECK_THROWS_AS(DeflectionTable({1}, g), Error);
  g << 0, -1, -1, 0;
  CHECK_THROWS_AS(DeflectionTable({1}, g), Error);
}

TEST_CASE("DegreePriors fall back to the default") {
  DegreePriors priors(Vector::Constant(2, 0.5));
  Vector custom(2);
  custom << 0.7, 0.3;
  priors.set({3}, custom);
  CHECK(priors.at({3})(0) == 0.7);
  CHECK(priors.at({4})(0) == 0.5);
}

TEST_CASE("validate_model flags detailed balance") {
  const auto p = test::two_class(0.8);
  const std::vector<Vector> means = {Vector::Constant(1, 1.0), Vector::Constant(1, -1.0)};
  const auto balanced = validate_model(GaussianClassModel::isotropic(Vector::Constant(2, 0.5), means, 1.0), p);
  CHECK(balanced.ok());
  CHECK(balanced.balanced);
  Vector skew(2);
  skew << 0.9, 0.1;
  const auto unbalanced = validate_model(GaussianClassModel::isotropic(skew, means, 1.0), p);
  CHECK(unbalanced.ok());
  CHECK_FALSE(unbalanced.balanced);
  CHECK_THROWS_AS(validate_model(GaussianClassModel::isotropic(skew, means, 1.0), TransitionMatrix::identity(3)),
                  Error);
}

TEST_CASE("khop_transition examples") {
  CHECK(khop_transition(TransitionMatrix::identity(3), 5).entries().isApprox(Matrix::Identity(3, 3)));
  const auto p2 = khop_transition(test::two_class(0.8), 2);
  CHECK(p2(0, 0) == doctest::Approx(0.68).epsilon(1e-14));
  CHECK(p2(0, 1) == doctest::Approx(0.32).epsilon(1e-14));
  CHECK(khop_transition(test::two_class(0.0), 2).entries().isApprox(Matrix::Identity(2, 2)));
  CHECK_THROWS_AS(khop_transition(test::two_class(0.8), 0), Error);
}

TEST_CASE("property: k-hop powers stay row-stochastic up to k = 10") {
  synth::CounterRng rng(synth::stream_key({0x4B, 1}));
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 5;
    Matrix p(m, m);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) p(r, c) = rng.uniform();
      p.row(r) /= p.row(r).sum();
      p(r, m - 1) = 1.0 - p.row(r).head(m - 1).sum();
    }
    const TransitionMatrix t(p);
    for (int k = 1; k <= 10; ++k) {
      const Matrix pk = khop_transition(t, k).entries();
      for (int r = 0; r < m; ++r) CHECK(std::abs(pk.row(r).sum() - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("q_function examples and trapezoid oracle") {
  CHECK(q_function(0.0) == 0.5);
  CHECK(q_function(1.0) == doctest::Approx(0.158655).epsilon(1e-6));
  CHECK(q_function(-1.7) == doctest::Approx(1.0 - q_function(1.7)).epsilon(1e-15));
  CHECK_THROWS_AS(q_function(std::nan("")), Error);
  for (double a : {0.0, 0.5, 1.0, 2.0, 3.0}) CHECK(std::abs(q_function(a) - test::q_trapezoid(a)) <= 1e-8);
}

TEST_CASE("pairwise_deflection examples") {
  CHECK(pairwise_deflection({Vector::Ones(2), Vector::Ones(2)}, Matrix::Identity(2, 2))(0, 1) == 0.0);
  Vector a(2), b(2);
  a << 1, 0;
  b << -1, 0;
  CHECK(pairwise_deflection({a, b}, Matrix::Identity(2, 2))(0, 1) == doctest::Approx(4.0));

  synth::CounterRng rng(synth::stream_key({0xDEF1, 3}));
  const Matrix c = test::random_spd(5, rng);
  const std::vector<Vector> means = {test::random_vector(5, rng), test::random_vector(5, rng),
                                     test::random_vector(5, rng)};
  const auto table = pairwise_deflection(means, c);
  const Matrix inv = c.inverse();
  for (int m = 0; m < 3; ++m) {
    for (int l = 0; l < 3; ++l) {
      const Vector d = means[m] - means[l];
      CHECK(table(m, l) == doctest::Approx(d.dot(inv * d)).epsilon(1e-10));
    }
  }
}

TEST_CASE("property: deflections are invariant under rotation with isotropic C") {
  synth::CounterRng rng(synth::stream_key({0x40, 7}));
  for (int trial = 0; trial < 10; ++trial) {
    const int f = 3 + trial;
    const Matrix u = test::random_orthogonal(f, rng);
    std::vector<Vector> means;
    std::vector<Vector> rotated;
    for (int m = 0; m < 4; ++m) {
      means.push_back(test::random_vector(f, rng));
      rotated.push_back(u * means.back());
    }
    const Matrix c = 2.0 * Matrix::Identity(f, f);
    const auto g0 = pairwise_deflection(means, c);
    const auto g1 = pairwise_deflection(rotated, c);
    CHECK((g0.values() - g1.values()).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("error_upper_bound examples") {
  Matrix g(2, 2);
  g << 0, 4, 4, 0;
  CHECK(error_upper_bound(DeflectionTable({0}, g), Vector::Constant(2, 0.5)) ==
        doctest::Approx(0.158655).epsilon(1e-6));
  Matrix g4 = Matrix::Constant(4, 4, 4.0);
  g4.diagonal().setZero();
  CHECK(error_upper_bound(DeflectionTable({0}, g4), Vector::Constant(4, 0.25)) ==
        doctest::Approx(0.475966).epsilon(1e-6));
  double prev = 1.0;
  for (double gamma : {1.0, 10.0, 100.0, 1000.0}) {
    g << 0, gamma, gamma, 0;
    const double b = error_upper_bound(DeflectionTable({0}, g), Vector::Constant(2, 0.5));
    CHECK(b < prev);
    prev = b;
  }
  CHECK(prev < 1e-50);
  g.setZero();
  CHECK_THROWS_AS(error_upper_bound(DeflectionTable({0}, g), Vector::Constant(2, 0.5)), Error);
  CHECK(error_upper_bound_limit(DeflectionTable({0}, g), Vector::Constant(2, 0.5)) == 0.5);
}

TEST_CASE("property: the union bound is strictly decreasing in every deflection") {
  synth::CounterRng rng(synth::stream_key({0xB0, 11}));
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 2 + trial % 3;
    Matrix g = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) g(i, j) = g(j, i) = 0.5 + 8.0 * rng.uniform();
    Vector priors(m);
    for (int i = 0; i < m; ++i) priors(i) = 0.5 + rng.uniform();
    priors /= priors.sum();
    priors(m - 1) = 1.0 - priors.head(m - 1).sum();
    const double base = error_upper_bound(DeflectionTable({0}, g), priors);
    const int i = trial % m;
    const int j = (i + 1) % m;
    Matrix bumped = g;
    bumped(i, j) = bumped(j, i) = g(i, j) + 1e-4;
    CHECK(error_upper_bound(DeflectionTable({0}, bumped), priors) < base);
  }
}

TEST_CASE("simplex_means examples") {
  const auto two = simplex_means(2, 1, 4.0, 1.0);
  CHECK(two[0](0) == doctest::Approx(1.0));
  CHECK(two[1](0) == doctest::Approx(-1.0));
  const auto four = simplex_means(4, 20, 4.0, 1.0);
  const auto table = pairwise_deflection(four, Matrix::Identity(20, 20));
  for (int m = 0; m < 4; ++m)
    for (int l = 0; l < 4; ++l)
      if (m != l) CHECK(table(m, l) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(simplex_means(3, 1, 4.0, 1.0), Error);
}
