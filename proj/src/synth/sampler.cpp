#include "graphsig/synth/sampler.hpp"

#include "graphsig/model/decision.hpp"

namespace graphsig::synth {

FeatureSampler::FeatureSampler(const model::GaussianClassModel& model)
    : model_(&model), lower_(model.covariance_factor().lower()) {
  const Matrix& c = model.covariance();
  const Matrix off = c - Matrix(c.diagonal().asDiagonal());
  diagonal_ = off.cwiseAbs().maxCoeff() == 0.0;
  diag_ = c.diagonal().cwiseSqrt();
}

void FeatureSampler::draw(int label, CounterRng& rng, Eigen::Ref<Vector> out) const {
  const int f = dim();
  const Vector& mu = model_->mean(label);
  if (diagonal_) {
    for (int i = 0; i < f; ++i) out(i) = mu(i) + diag_(i) * rng.normal();
    return;
  }
  Vector eps(f);
  for (int i = 0; i < f; ++i) eps(i) = rng.normal();
  out = mu + lower_.triangularView<Eigen::Lower>() * eps;
}

int draw_category(const Vector& probabilities, CounterRng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  const auto n = static_cast<int>(probabilities.size());
  for (int c = 0; c < n; ++c) {
    acc += probabilities(c);
    if (u < acc) return c;
  }
  // u landed in the rounding gap above the last partial sum.
  for (int c = n - 1; c >= 0; --c) {
    if (probabilities(c) > 0.0) return c;
  }
  return n - 1;
}

NeighborhoodSampler::NeighborhoodSampler(const model::GaussianClassModel& model,
                                         const model::TransitionMatrix& p, int max_hops)
    : model_(&model), features_(model) {
  if (p.order() != model.num_classes()) throw Error("sampler: transition/model class mismatch");
  if (max_hops < 1) throw Error("sampler: max_hops must be >= 1");
  for (int k = 1; k <= max_hops; ++k) hop_rows_.push_back(model::khop_transition(p, k));
}

void NeighborhoodSampler::sample(std::uint64_t seed, std::uint64_t cell_key, std::uint64_t trial,
                                 int degree, NeighborhoodSample& out) const {
  if (degree < 0) throw Error("sampler: negative degree");
  CounterRng rng{seed, cell_key, trial};
  const int f = features_.dim();
  const int m_count = model_->num_classes();

  out.degree = degree;
  out.focal_label = draw_category(model_->priors(), rng);
  out.focal_feature.resize(f);
  features_.draw(out.focal_label, rng, out.focal_feature);

  const Matrix& p = hop_rows_.front().entries();
  const Vector row = p.row(out.focal_label).transpose();
  out.neighbor_labels.resize(static_cast<std::size_t>(degree));
  out.class_counts.assign(static_cast<std::size_t>(m_count), 0);
  for (int j = 0; j < degree; ++j) {
    const int y = draw_category(row, rng);
    out.neighbor_labels[static_cast<std::size_t>(j)] = y;
    ++out.class_counts[static_cast<std::size_t>(y)];
  }
  out.neighbor_features.resize(f, degree);
  for (int j = 0; j < degree; ++j) {
    features_.draw(out.neighbor_labels[static_cast<std::size_t>(j)], rng, out.neighbor_features.col(j));
  }
}

void NeighborhoodSampler::sample_higher_hops(std::uint64_t seed, std::uint64_t cell_key,
                                             std::uint64_t trial, int focal_label,
                                             const DegreeKey& profile,
                                             std::vector<HopShell>& shells) const {
  const int hops = static_cast<int>(profile.size());
  if (hops > max_hops()) throw Error("sampler: profile has more hops than the sampler was built for");
  const int f = features_.dim();
  shells.resize(static_cast<std::size_t>(std::max(0, hops - 1)));
  for (int k = 2; k <= hops; ++k) {
    const int dk = profile[static_cast<std::size_t>(k - 1)];
    if (dk < 0) throw Error("sampler: negative hop degree");
    CounterRng rng{seed, cell_key, trial, 0xC0FFEE00ULL + static_cast<std::uint64_t>(k)};
    const Vector row = hop_rows_[static_cast<std::size_t>(k - 1)].entries().row(focal_label).transpose();
    auto& shell = shells[static_cast<std::size_t>(k - 2)];
    shell.labels.resize(static_cast<std::size_t>(dk));
    for (int j = 0; j < dk; ++j) shell.labels[static_cast<std::size_t>(j)] = draw_category(row, rng);
    shell.features.resize(f, dk);
    for (int j = 0; j < dk; ++j) {
      features_.draw(shell.labels[static_cast<std::size_t>(j)], rng, shell.features.col(j));
    }
  }
}

std::vector<NeighborhoodSample> sample_neighborhood_batch(const model::GaussianClassModel& model,
                                                          const model::TransitionMatrix& p,
                                                          int degree, std::uint64_t trials,
                                                          std::uint64_t seed) {
  if (trials < 1) throw Error("sample_neighborhood_batch: trials must be >= 1");
  const NeighborhoodSampler sampler(model, p);
  const std::uint64_t cell = stream_key({0x6E62ULL, static_cast<std::uint64_t>(degree)});
  std::vector<NeighborhoodSample> batch(trials);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
    sampler.sample(seed, cell, static_cast<std::uint64_t>(t), degree, batch[static_cast<std::size_t>(t)]);
  }
  return batch;
}

}  // namespace graphsig::synth
