#include "graphsig/classify/classifier.hpp"

#include "graphsig/format.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace graphsig::classify {

LinearClassifierFamily::LinearClassifierFamily(RepresentationKind kind, int num_classes, int dim,
                                               bool normalized)
    : kind_(kind), num_classes_(num_classes), dim_(dim), normalized_(normalized) {
  if (num_classes < 2 || dim < 1) throw Error("classifier family: invalid shape");
}

void LinearClassifierFamily::add(const DegreeKey& key, ClassifierBlock block) {
  if (block.weights.rows() != num_classes_ || block.weights.cols() != dim_ ||
      block.biases.size() != num_classes_) {
    throw Error("classifier family: block shape does not match the family");
  }
  if (!blocks_.emplace(key, std::move(block)).second) {
    throw Error("classifier family: duplicate block for degree " + to_string(key));
  }
}

const ClassifierBlock& LinearClassifierFamily::at(const DegreeKey& key) const {
  const auto it = blocks_.find(key);
  if (it == blocks_.end()) {
    throw Error("classifier family (" + std::string(kind_name(kind_)) + ") has no block for degree " +
                to_string(key));
  }
  return it->second;
}

Vector LinearClassifierFamily::scores(const DegreeKey& key, const Vector& z) const {
  const auto& block = at(key);
  if (z.size() != dim_) throw Error("classifier: representation has the wrong dimension");
  return block.weights * z + block.biases;
}

int LinearClassifierFamily::predict(const DegreeKey& key, const Vector& z) const {
  return argmax_first(scores(key, z));
}

void LinearClassifierFamily::merge(const LinearClassifierFamily& other) {
  if (other.kind_ != kind_ || other.num_classes_ != num_classes_ || other.dim_ != dim_ ||
      other.normalized_ != normalized_) {
    throw Error("classifier family: cannot merge families of different shapes");
  }
  for (const auto& [key, block] : other.blocks_) add(key, block);
}

int argmax_first(const Eigen::Ref<const Vector>& scores) {
  int best = 0;
  for (int m = 1; m < scores.size(); ++m) {
    if (scores(m) > scores(best)) best = m;
  }
  return best;
}

LinearClassifierFamily bayes_graph_agnostic(const model::GaussianClassModel& model) {
  const int m_count = model.num_classes();
  const auto& factor = model.covariance_factor();
  ClassifierBlock block{Matrix(m_count, model.feature_dim()), Vector(m_count)};
  for (int m = 0; m < m_count; ++m) {
    const Vector w = factor.solve(model.mean(m));
    block.weights.row(m) = w.transpose();
    block.biases(m) = -0.5 * model.mean(m).dot(w) + std::log(model.prior(m));
  }
  LinearClassifierFamily family(RepresentationKind::raw, m_count, model.feature_dim());
  family.add({0}, std::move(block));
  return family;
}

LinearClassifierFamily build_generic_classifier(const MomentSummary& moments,
                                                const model::DegreePriors& priors) {
  const int m_count = moments.num_classes();
  const Vector& log_base = priors.at(moments.degree);
  if (log_base.size() != m_count) throw Error("classifier: prior/class count mismatch");
  const model::SpdFactor factor(moments.pooled_covariance,
                                "pooled covariance at degree " + to_string(moments.degree));
  ClassifierBlock block{Matrix(m_count, moments.dim()), Vector(m_count)};
  for (int m = 0; m < m_count; ++m) {
    const Vector& nu = moments.class_means[static_cast<std::size_t>(m)];
    const Vector w = factor.solve(nu);
    block.weights.row(m) = w.transpose();
    block.biases(m) = -0.5 * nu.dot(w) + std::log(log_base(m));
  }
  LinearClassifierFamily family(moments.kind, m_count, moments.dim());
  family.add(moments.degree, std::move(block));
  return family;
}

LinearClassifierFamily build_wsa_classifier(const MomentSummary& moments,
                                            const model::DegreePriors& priors) {
  if (moments.kind != RepresentationKind::wsa) throw Error("build_wsa_classifier: moments are not WSA");
  return build_generic_classifier(moments, priors);
}

LinearClassifierFamily build_sca_classifier(const MomentSummary& moments,
                                            const model::DegreePriors& priors, bool normalize) {
  if (moments.kind != RepresentationKind::sca && moments.kind != RepresentationKind::sca_khop) {
    throw Error("build_sca_classifier: moments are not SCA");
  }
  const auto hops = static_cast<int>(moments.degree.size());
  if (normalize && hops != 1) throw Error("build_sca_classifier: normalization is defined for one hop only");
  const int m_count = moments.num_classes();
  const auto f = moments.feature_covariance.rows();
  const Vector& base = priors.at(moments.degree);
  if (base.size() != m_count) throw Error("classifier: prior/class count mismatch");

  const model::SpdFactor c_factor(moments.feature_covariance, "feature covariance C");
  std::vector<model::SpdFactor> h_factors;
  for (int k = 0; k < hops; ++k) {
    if (moments.degree[static_cast<std::size_t>(k)] == 0) {
      h_factors.emplace_back(Matrix::Identity(f, f), "unused");
      continue;
    }
    h_factors.emplace_back(moments.neighbor_blocks[static_cast<std::size_t>(k)],
                           "neighbor block H_" + std::to_string(k + 1));
  }

  ClassifierBlock block{Matrix::Zero(m_count, moments.dim()), Vector(m_count)};
  for (int m = 0; m < m_count; ++m) {
    const Vector& mu = moments.feature_means[static_cast<std::size_t>(m)];
    const Vector wx = c_factor.solve(mu);
    block.weights.row(m).head(f) = wx.transpose();
    double bias = -0.5 * mu.dot(wx) + std::log(base(m));
    for (int k = 0; k < hops; ++k) {
      const int dk = moments.degree[static_cast<std::size_t>(k)];
      if (dk == 0) continue;
      const Vector& mbar = moments.neighbor_means[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
      const Vector ws = h_factors[static_cast<std::size_t>(k)].solve(mbar);
      const double scale = normalize ? static_cast<double>(dk) : 1.0;
      block.weights.row(m).segment((k + 1) * f, f) = scale * ws.transpose();
      bias -= 0.5 * dk * mbar.dot(ws);
    }
    block.biases(m) = bias;
  }
  const auto kind = hops == 1 && moments.kind == RepresentationKind::sca ? RepresentationKind::sca
                                                                         : RepresentationKind::sca_khop;
  LinearClassifierFamily family(kind, m_count, moments.dim(), normalize);
  family.add(moments.degree, std::move(block));
  return family;
}

LinearClassifierFamily build_sca_khop_classifier(const model::GaussianClassModel& model,
                                                 const model::TransitionMatrix& p,
                                                 const DegreeKey& profile, int hops,
                                                 const model::DegreePriors& priors) {
  if (hops < 1 || hops > 3) throw Error("k-hop classifier: K must be in [1, 3]");
  if (static_cast<int>(profile.size()) != hops) throw Error("k-hop classifier: profile length != K");
  const Vector& pool = priors.at(profile);
  return build_sca_classifier(sca_khop_moments(model, p, profile, &pool), priors, false);
}

model::DeflectionTable wsa_deflection(const MomentSummary& moments) {
  return model::pairwise_deflection(moments.class_means,
                                    model::SpdFactor(moments.pooled_covariance,
                                                     "pooled covariance at degree " + to_string(moments.degree)),
                                    moments.degree);
}

model::DeflectionTable sca_deflection(const MomentSummary& moments) {
  if (moments.kind != RepresentationKind::sca && moments.kind != RepresentationKind::sca_khop) {
    throw Error("sca_deflection: moments are not SCA");
  }
  const int m_count = moments.num_classes();
  const model::SpdFactor c_factor(moments.feature_covariance, "feature covariance C");
  Matrix table = model::pairwise_deflection(moments.feature_means, c_factor).values();
  for (std::size_t k = 0; k < moments.degree.size(); ++k) {
    const int dk = moments.degree[k];
    if (dk == 0) continue;
    const model::SpdFactor h(moments.neighbor_blocks[k], "neighbor block H_" + std::to_string(k + 1));
    const auto& mbar = moments.neighbor_means[k];
    for (int m = 0; m < m_count; ++m) {
      for (int l = m + 1; l < m_count; ++l) {
        const double g = dk * h.inverse_quadratic(mbar[static_cast<std::size_t>(m)] - mbar[static_cast<std::size_t>(l)]);
        table(m, l) += g;
        table(l, m) += g;
      }
    }
  }
  return model::DeflectionTable(moments.degree, std::move(table));
}

std::string_view kind_name(RepresentationKind kind) {
  switch (kind) {
    case RepresentationKind::raw: return "raw";
    case RepresentationKind::wsa: return "wsa";
    case RepresentationKind::sca: return "sca";
    case RepresentationKind::sca_khop: return "sca_khop";
  }
  return "unknown";
}

namespace {

RepresentationKind kind_from_name(const std::string& name) {
  for (auto k : {RepresentationKind::raw, RepresentationKind::wsa, RepresentationKind::sca,
                 RepresentationKind::sca_khop}) {
    if (kind_name(k) == name) return k;
  }
  throw Error("classifier file: unknown kind '" + name + "'");
}

constexpr std::string_view kMagic = "graphsig-linear-classifier 1";

double parse_number(const std::string& tok) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw Error("classifier file: '" + tok + "' is not a number");
  }
  return v;
}

}  // namespace

std::string serialize(const LinearClassifierFamily& family) {
  std::ostringstream os;
  os << kMagic << '\n'
     << "kind " << kind_name(family.kind()) << '\n'
     << "normalized " << (family.normalized() ? 1 : 0) << '\n'
     << "classes " << family.num_classes() << '\n'
     << "dim " << family.dim() << '\n';
  for (const auto& [key, block] : family.blocks()) {
    os << "degree";
    for (int d : key) os << ' ' << d;
    os << '\n';
    for (int m = 0; m < family.num_classes(); ++m) {
      os << "w " << m + 1;
      for (int i = 0; i < family.dim(); ++i) os << ' ' << format_double(block.weights(m, i));
      os << '\n';
    }
    for (int m = 0; m < family.num_classes(); ++m) {
      os << "b " << m + 1 << ' ' << format_double(block.biases(m)) << '\n';
    }
  }
  return os.str();
}

LinearClassifierFamily parse_classifier_family(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw Error("classifier file: bad header");
  auto expect = [&](const std::string& word) {
    std::string got;
    if (!std::getline(in, line)) throw Error("classifier file: truncated before '" + word + "'");
    std::istringstream ls(line);
    ls >> got;
    if (got != word) throw Error("classifier file: expected '" + word + "', got '" + got + "'");
    std::string value;
    ls >> value;
    return value;
  };
  const auto kind = kind_from_name(expect("kind"));
  const bool normalized = expect("normalized") == "1";
  const int classes = std::stoi(expect("classes"));
  const int dim = std::stoi(expect("dim"));
  LinearClassifierFamily family(kind, classes, dim, normalized);

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word != "degree") throw Error("classifier file: expected 'degree', got '" + word + "'");
    DegreeKey key;
    for (int d; ls >> d;) key.push_back(d);
    ClassifierBlock block{Matrix(classes, dim), Vector(classes)};
    for (int m = 0; m < classes; ++m) {
      if (!std::getline(in, line)) throw Error("classifier file: truncated weights");
      std::istringstream ws(line);
      int idx = 0;
      ws >> word >> idx;
      if (word != "w" || idx != m + 1) throw Error("classifier file: malformed weight line");
      for (int i = 0; i < dim; ++i) {
        std::string tok;
        if (!(ws >> tok)) throw Error("classifier file: short weight line");
        block.weights(m, i) = parse_number(tok);
      }
    }
    for (int m = 0; m < classes; ++m) {
      if (!std::getline(in, line)) throw Error("classifier file: truncated biases");
      std::istringstream bs(line);
      int idx = 0;
      std::string tok;
      bs >> word >> idx >> tok;
      if (word != "b" || idx != m + 1 || tok.empty()) throw Error("classifier file: malformed bias line");
      block.biases(m) = parse_number(tok);
    }
    family.add(key, std::move(block));
  }
  return family;
}

}  // namespace graphsig::classify
