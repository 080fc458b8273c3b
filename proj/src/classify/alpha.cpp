#include "graphsig/classify/alpha.hpp"

#include <cmath>
#include <limits>

namespace graphsig::classify {

double optimal_alpha_closed_form(double p_h, double gamma0) {
  if (!(gamma0 > 0.0)) throw Error("optimal alpha: gamma0 must be positive");
  if (!(p_h >= 0.0 && p_h <= 1.0)) throw Error("optimal alpha: p_h must lie in [0, 1]");
  return (2.0 * p_h - 1.0) / (1.0 + p_h * (1.0 - p_h) * gamma0);
}

double special_case1_deflection(double alpha, int degree, double p_h, double gamma0) {
  const double d = degree;
  const double gain = 1.0 + alpha * d * (2.0 * p_h - 1.0);
  const double a2d = alpha * alpha * d;
  return gain * gain * gamma0 / (1.0 + a2d + a2d * p_h * (1.0 - p_h) * gamma0);
}

Matrix sherman_morrison_pooled_inverse(const Matrix& covariance, const Vector& delta, double alpha,
                                       int degree, double p_h) {
  const Matrix c_inv = covariance.inverse();
  const Vector u = c_inv * delta;
  const double gamma0 = delta.dot(u);
  const double a2d = alpha * alpha * degree;
  const double spread = a2d * p_h * (1.0 - p_h);
  const double xi = spread / (1.0 + a2d + spread * gamma0);
  return (c_inv - xi * u * u.transpose()) / (1.0 + a2d);
}

std::vector<double> AlphaGrid::points() const {
  if (!(step > 0.0) || !(hi >= lo)) throw Error("alpha grid: need step > 0 and hi >= lo");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

AlphaSearchResult optimize_alpha_grid(const model::GaussianClassModel& model,
                                      const model::TransitionMatrix& p, int degree,
                                      const AlphaGrid& grid, const Vector* priors) {
  const auto points = grid.points();
  if (points.empty()) throw Error("alpha grid is empty");
  const Vector& weights = priors != nullptr ? *priors : model.priors();

  AlphaSearchResult best{0.0, std::numeric_limits<double>::infinity(),
                         model::DeflectionTable({degree}, Matrix::Zero(model.num_classes(), model.num_classes())),
                         {}};
  bool found = false;
  best.curve.reserve(points.size());
  for (double alpha : points) {
    const auto moments = wsa_moments(model, p, alpha, degree, &weights);
    auto table = wsa_deflection(moments);
    const double objective = model::error_upper_bound_limit(table, weights);
    best.curve.emplace_back(alpha, objective);
    const bool better = objective < best.objective ||
                        (objective == best.objective && std::abs(alpha) < std::abs(best.alpha));
    if (!found || better) {
      best.alpha = alpha;
      best.objective = objective;
      best.deflections = std::move(table);
      found = true;
    }
  }
  return best;
}

}  // namespace graphsig::classify
