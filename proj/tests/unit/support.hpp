#pragma once

#include "graphsig/analysis/experiment.hpp"
#include "graphsig/synth/rng.hpp"

#include <cmath>

namespace graphsig::test {

/// P(N(0,1) > a) by trapezoid integration over [a, a + 40] with n points.
inline double q_trapezoid(double a, int n = 1000000) {
  const double hi = a + 40.0;
  const double h = (hi - a) / (n - 1);
  auto phi = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); };
  double s = 0.5 * (phi(a) + phi(hi));
  for (int i = 1; i < n - 1; ++i) s += phi(a + i * h);
  return s * h;
}

inline double q_erfc(double a) { return 0.5 * std::erfc(a / std::sqrt(2.0)); }

inline Matrix random_spd(int f, synth::CounterRng& rng) {
  Matrix a(f, f);
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) a(i, j) = rng.normal();
  return a * a.transpose() / f + 0.5 * Matrix::Identity(f, f);
}

inline Vector random_vector(int f, synth::CounterRng& rng) {
  Vector v(f);
  for (int i = 0; i < f; ++i) v(i) = rng.normal();
  return v;
}

inline Matrix random_orthogonal(int f, synth::CounterRng& rng) {
  Matrix a(f, f);
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) a(i, j) = rng.normal();
  return a.householderQr().householderQ();
}

inline model::GaussianClassModel simplex_model(int m, int f, double gamma0) {
  analysis::ModelSpec spec;
  spec.num_classes = m;
  spec.feature_dim = f;
  spec.simplex_gamma0 = gamma0;
  return analysis::make_model(spec);
}

inline model::TransitionMatrix two_class(double p_h) { return analysis::special_case_transition(1, p_h); }

}  // namespace graphsig::test
