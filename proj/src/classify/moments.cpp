#include "graphsig/classify/moments.hpp"

#include "graphsig/model/decision.hpp"

namespace graphsig::classify {

std::vector<Vector> neighbor_class_means(const model::GaussianClassModel& model, const Matrix& p) {
  const int m_count = model.num_classes();
  std::vector<Vector> out(static_cast<std::size_t>(m_count), Vector::Zero(model.feature_dim()));
  for (int m = 0; m < m_count; ++m) {
    for (int l = 0; l < m_count; ++l) out[static_cast<std::size_t>(m)] += p(m, l) * model.mean(l);
  }
  return out;
}

Matrix neighbor_spread(const model::GaussianClassModel& model, const Matrix& p, int m) {
  const int f = model.feature_dim();
  Vector mbar = Vector::Zero(f);
  for (int l = 0; l < model.num_classes(); ++l) mbar += p(m, l) * model.mean(l);
  Matrix spread = Matrix::Zero(f, f);
  for (int q = 0; q < model.num_classes(); ++q) {
    if (p(m, q) == 0.0) continue;
    const Vector diff = model.mean(q) - mbar;
    spread.noalias() += p(m, q) * diff * diff.transpose();
  }
  return spread;
}

std::pair<Vector, Matrix> wsa_conditional_moments(const model::GaussianClassModel& model,
                                                  double alpha, int focal_class,
                                                  const std::vector<int>& counts) {
  const int m_count = model.num_classes();
  if (static_cast<int>(counts.size()) != m_count) throw Error("conditional moments: count vector size != M");
  if (focal_class < 0 || focal_class >= m_count) throw Error("conditional moments: class out of range");
  int d = 0;
  Vector mean = model.mean(focal_class);
  for (int q = 0; q < m_count; ++q) {
    const int n = counts[static_cast<std::size_t>(q)];
    if (n < 0) throw Error("conditional moments: negative count");
    d += n;
    mean += alpha * n * model.mean(q);
  }
  return {mean, (1.0 + alpha * alpha * d) * model.covariance()};
}

WsaWeightSums WsaWeightSums::uniform(double alpha, int degree) {
  return {1.0, alpha * degree, alpha * alpha * degree};
}

WsaWeightSums WsaWeightSums::from(const aggregate::ResolvedWeights& w) {
  WsaWeightSums s{w.self_weight, 0.0, 0.0};
  for (double a : w.neighbor_weights) {
    s.sum += a;
    s.sum_squares += a * a;
  }
  return s;
}

namespace {

Vector pooling_or_priors(const model::GaussianClassModel& model, const Vector* pooling) {
  if (pooling == nullptr) return model.priors();
  if (pooling->size() != model.num_classes()) throw Error("moments: pooling weight count != M");
  model::check_probability_vector(*pooling, "pooling weights");
  return *pooling;
}

void check_transition(const model::GaussianClassModel& model, const model::TransitionMatrix& p) {
  if (p.order() != model.num_classes()) {
    throw Error("moments: transition matrix order " + std::to_string(p.order()) + " != M = " +
                std::to_string(model.num_classes()));
  }
}

Matrix pooled(const std::vector<Matrix>& covs, const Vector& weights) {
  Matrix out = Matrix::Zero(covs.front().rows(), covs.front().cols());
  for (std::size_t m = 0; m < covs.size(); ++m) out += weights(static_cast<Eigen::Index>(m)) * covs[m];
  return out;
}

}  // namespace

MomentSummary wsa_moments(const model::GaussianClassModel& model, const model::TransitionMatrix& p,
                          double alpha, int degree, const Vector* pooling) {
  return wsa_moments(model, p, WsaWeightSums::uniform(alpha, degree), degree, pooling);
}

MomentSummary wsa_moments(const model::GaussianClassModel& model, const model::TransitionMatrix& p,
                          const WsaWeightSums& w, int degree, const Vector* pooling) {
  check_transition(model, p);
  if (degree < 0) throw Error("wsa_moments: negative degree");
  const int m_count = model.num_classes();
  const Matrix& c = model.covariance();
  const auto mbar = neighbor_class_means(model, p.entries());

  MomentSummary s;
  s.kind = RepresentationKind::wsa;
  s.degree = {degree};
  s.pooling_weights = pooling_or_priors(model, pooling);
  s.feature_covariance = c;
  s.feature_means = model.means();
  s.neighbor_means = {mbar};
  for (int m = 0; m < m_count; ++m) {
    s.class_means.push_back(w.self_weight * model.mean(m) + w.sum * mbar[static_cast<std::size_t>(m)]);
    Matrix cov = (w.self_weight * w.self_weight + w.sum_squares) * c;
    if (w.sum_squares != 0.0) cov += w.sum_squares * neighbor_spread(model, p.entries(), m);
    s.class_covariances.push_back(std::move(cov));
  }
  s.pooled_covariance = pooled(s.class_covariances, s.pooling_weights);
  return s;
}

MomentSummary sca_moments(const model::GaussianClassModel& model, const model::TransitionMatrix& p,
                          int degree, const Vector* pooling) {
  if (degree < 0) throw Error("sca_moments: negative degree");
  MomentSummary s = sca_khop_moments(model, p, {degree}, pooling);
  s.kind = RepresentationKind::sca;
  return s;
}

MomentSummary sca_khop_moments(const model::GaussianClassModel& model,
                               const model::TransitionMatrix& p, const DegreeKey& profile,
                               const Vector* pooling) {
  check_transition(model, p);
  if (profile.empty()) throw Error("sca moments: empty degree profile");
  const int m_count = model.num_classes();
  const int f = model.feature_dim();
  const int hops = static_cast<int>(profile.size());
  const int dim = (hops + 1) * f;
  const Matrix& c = model.covariance();

  MomentSummary s;
  s.kind = RepresentationKind::sca_khop;
  s.degree = profile;
  s.pooling_weights = pooling_or_priors(model, pooling);
  s.feature_covariance = c;
  s.feature_means = model.means();
  s.class_means.assign(static_cast<std::size_t>(m_count), Vector::Zero(dim));
  s.class_covariances.assign(static_cast<std::size_t>(m_count), Matrix::Zero(dim, dim));
  for (int m = 0; m < m_count; ++m) {
    s.class_means[static_cast<std::size_t>(m)].head(f) = model.mean(m);
    s.class_covariances[static_cast<std::size_t>(m)].topLeftCorner(f, f) = c;
  }

  for (int k = 1; k <= hops; ++k) {
    const int dk = profile[static_cast<std::size_t>(k - 1)];
    if (dk < 0) throw Error("sca moments: negative hop degree");
    const Matrix pk = model::khop_transition(p, k).entries();
    const auto mbar = neighbor_class_means(model, pk);
    Matrix h = c;
    const auto offset = static_cast<Eigen::Index>(k) * f;
    for (int m = 0; m < m_count; ++m) {
      const Matrix spread = neighbor_spread(model, pk, m);
      h += s.pooling_weights(m) * spread;
      s.class_means[static_cast<std::size_t>(m)].segment(offset, f) = dk * mbar[static_cast<std::size_t>(m)];
      s.class_covariances[static_cast<std::size_t>(m)].block(offset, offset, f, f) = dk * (c + spread);
    }
    s.neighbor_blocks.push_back(std::move(h));
    s.neighbor_means.push_back(mbar);
  }
  s.pooled_covariance = pooled(s.class_covariances, s.pooling_weights);
  return s;
}

}  // namespace graphsig::classify
