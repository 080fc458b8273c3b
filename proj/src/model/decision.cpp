#include "graphsig/model/decision.hpp"

#include <cmath>
#include <sstream>

namespace graphsig::model {

bool ModelDiagnostics::ok() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

ModelDiagnostics validate_model(const GaussianClassModel& model, const TransitionMatrix& p) {
  if (model.num_classes() != p.order()) {
    throw Error("model has " + std::to_string(model.num_classes()) +
                " classes but the transition matrix has order " + std::to_string(p.order()));
  }
  ModelDiagnostics report;
  const auto& priors = model.priors();
  const int m_count = model.num_classes();

  report.checks.push_back({"priors", std::abs(priors.sum() - 1.0) <= kProbabilityTolerance &&
                                         priors.minCoeff() > 0.0,
                           "priors sum to 1 and are positive"});
  {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(model.covariance(), Eigen::EigenvaluesOnly);
    std::ostringstream os;
    os << "smallest eigenvalue " << eig.eigenvalues().minCoeff();
    report.checks.push_back({"covariance_spd",
                             is_symmetric(model.covariance(), 1e-12) &&
                                 eig.eigenvalues().minCoeff() > 0.0,
                             os.str()});
  }
  {
    double worst = 0.0;
    for (int r = 0; r < p.order(); ++r) worst = std::max(worst, std::abs(p.entries().row(r).sum() - 1.0));
    std::ostringstream os;
    os << "largest row-sum drift " << worst;
    report.checks.push_back({"transition_rows", worst <= kProbabilityTolerance &&
                                                    p.entries().minCoeff() >= 0.0,
                             os.str()});
  }

  double worst_balance = 0.0;
  for (int m = 0; m < m_count; ++m) {
    for (int l = m + 1; l < m_count; ++l) {
      worst_balance = std::max(worst_balance,
                               std::abs(priors(m) * p(m, l) - priors(l) * p(l, m)));
    }
  }
  report.balanced = worst_balance <= kDetailedBalanceTolerance;
  return report;
}

TransitionMatrix khop_transition(const TransitionMatrix& p, int k) {
  if (k < 1) throw Error("k-hop order must be >= 1, got " + std::to_string(k));
  Matrix power = p.entries();
  for (int i = 1; i < k; ++i) power = power * p.entries();
  return TransitionMatrix(std::move(power));
}

double q_function(double a) {
  if (std::isnan(a)) throw Error("q_function: NaN argument");
  return 0.5 * std::erfc(a / std::sqrt(2.0));
}

DeflectionTable pairwise_deflection(const std::vector<Vector>& means, const SpdFactor& pooled,
                                    DegreeKey degree) {
  const auto m_count = static_cast<int>(means.size());
  Matrix table = Matrix::Zero(m_count, m_count);
  for (int m = 0; m < m_count; ++m) {
    if (means[static_cast<std::size_t>(m)].size() != pooled.dim()) {
      throw Error("pairwise_deflection: mean dimension does not match covariance '" +
                  pooled.name() + "'");
    }
  }
  for (int m = 0; m < m_count; ++m) {
    for (int l = m + 1; l < m_count; ++l) {
      const Vector diff = means[static_cast<std::size_t>(m)] - means[static_cast<std::size_t>(l)];
      const double g = pooled.inverse_quadratic(diff);
      table(m, l) = g;
      table(l, m) = g;
    }
  }
  return DeflectionTable(std::move(degree), std::move(table));
}

DeflectionTable pairwise_deflection(const std::vector<Vector>& means, const Matrix& pooled_cov,
                                    DegreeKey degree) {
  const SpdFactor factor(pooled_cov, "pooled covariance");
  return pairwise_deflection(means, factor, std::move(degree));
}

namespace {

double union_bound(const DeflectionTable& deflections, const Vector& priors, bool throw_on_zero) {
  const int m_count = deflections.num_classes();
  if (priors.size() != m_count) throw Error("error bound: prior/class count mismatch");
  double total = 0.0;
  for (int m = 0; m < m_count; ++m) {
    if (priors(m) == 0.0) continue;
    double row = 0.0;
    for (int l = 0; l < m_count; ++l) {
      if (l == m || priors(l) == 0.0) continue;
      const double g = deflections(m, l);
      if (g == 0.0) {
        if (throw_on_zero) {
          throw Error("error bound: classes " + std::to_string(m + 1) + " and " +
                      std::to_string(l + 1) + " are indistinguishable (zero deflection)");
        }
        if (priors(m) == priors(l)) {
          row += 0.5;
        } else if (priors(m) < priors(l)) {
          row += 1.0;
        }
        continue;
      }
      const double root = std::sqrt(g);
      row += q_function(0.5 * root + std::log(priors(m) / priors(l)) / root);
    }
    total += priors(m) * row;
  }
  return total;
}

}  // namespace

double error_upper_bound(const DeflectionTable& deflections, const Vector& priors) {
  return union_bound(deflections, priors, true);
}

double error_upper_bound_limit(const DeflectionTable& deflections, const Vector& priors) {
  return union_bound(deflections, priors, false);
}

std::vector<Vector> simplex_means(int num_classes, int feature_dim, double gamma0, double sigma) {
  if (num_classes < 2) throw Error("simplex_means: need at least two classes");
  if (feature_dim < num_classes - 1) {
    throw Error("simplex_means: feature dimension " + std::to_string(feature_dim) +
                " cannot hold a simplex for " + std::to_string(num_classes) + " classes");
  }
  if (!(gamma0 > 0.0) || !(sigma > 0.0)) throw Error("simplex_means: gamma0 and sigma must be positive");

  // Coordinates of the centred standard basis vectors in the Helmert basis
  // of the sum-zero subspace; pairwise distance sqrt(2) before scaling.
  const double scale = sigma * std::sqrt(gamma0) / std::sqrt(2.0);
  std::vector<Vector> means(static_cast<std::size_t>(num_classes), Vector::Zero(feature_dim));
  for (int k = 1; k < num_classes; ++k) {
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) means[static_cast<std::size_t>(i)](k - 1) = scale / norm;
    means[static_cast<std::size_t>(k)](k - 1) = -scale * k / norm;
  }
  return means;
}

}  // namespace graphsig::model
