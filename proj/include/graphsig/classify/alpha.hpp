#pragma once

#include "graphsig/classify/classifier.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace graphsig::classify {

/// Two-class symmetric homophily (p_11 = p_22 = p_h):
///   alpha* = (2 p_h - 1) / (1 + p_h (1 - p_h) gamma0), independent of d.
double optimal_alpha_closed_form(double p_h, double gamma0);

/// WSA deflection for the same setting in scalar form:
///   (1 + a d (2p_h - 1))^2 gamma0 / (1 + d a^2 + d a^2 p_h (1 - p_h) gamma0).
double special_case1_deflection(double alpha, int degree, double p_h, double gamma0);

/// Explicit rank-one-update inverse of the pooled WSA covariance
///   Rbar = (1 + a^2 d) C + a^2 d p_h (1-p_h) delta delta^T,
/// i.e. (C^{-1} - xi C^{-1} delta delta^T C^{-1}) / (1 + a^2 d) with
///   xi = a^2 d p_h (1-p_h) / (1 + a^2 d + a^2 d p_h (1-p_h) gamma0),
/// where delta = mu_1 - mu_2 and gamma0 = delta^T C^{-1} delta. This is the
/// one place an explicit inverse is formed, as a verification path.
Matrix sherman_morrison_pooled_inverse(const Matrix& covariance, const Vector& delta, double alpha,
                                       int degree, double p_h);

struct AlphaGrid {
  double lo = -1.0;
  double hi = 1.0;
  double step = 0.005;

  [[nodiscard]] std::vector<double> points() const;
};

struct AlphaSearchResult {
  double alpha = 0.0;
  double objective = 0.0;  // union bound at the optimum
  model::DeflectionTable deflections;
  std::vector<std::pair<double, double>> curve;  // (alpha, objective)
};

/// Grid search of the WSA neighbor weight minimizing the union error bound
/// at degree d. Ties go to the smaller |alpha|.
AlphaSearchResult optimize_alpha_grid(const model::GaussianClassModel& model,
                                      const model::TransitionMatrix& p, int degree,
                                      const AlphaGrid& grid = {},
                                      const Vector* priors = nullptr);

}  // namespace graphsig::classify
