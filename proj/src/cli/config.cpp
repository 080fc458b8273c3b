#include "graphsig/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace graphsig::cli {

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw Error("config: '" + key + "' " + what);
}

void check_keys(const Json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where, "must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (allowed.count(k) == 0) fail(where.empty() ? k : where + "." + k, "is not a recognized key");
  }
}

double get_number(const Json& j, const std::string& key) {
  if (!j.is_number()) fail(key, "must be a number");
  return j.get<double>();
}

std::int64_t get_integer(const Json& j, const std::string& key) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::floor(v) == v && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  }
  fail(key, "must be an integer");
}

std::uint64_t get_unsigned(const Json& j, const std::string& key) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const auto v = get_integer(j, key);
  if (v < 0) fail(key, "must be non-negative");
  return static_cast<std::uint64_t>(v);
}

std::vector<double> get_number_list(const Json& j, const std::string& key) {
  if (!j.is_array()) fail(key, "must be a list of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(get_number(v, key));
  return out;
}

double tidy(double v) { return std::round(v * 1e12) / 1e12; }

std::vector<double> range(double start, double stop, double step, const std::string& key) {
  if (!(step > 0.0)) fail(key, "step must be positive");
  if (!(stop >= start)) fail(key, "stop must not be below start");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> out;
  for (long i = 0; i <= n; ++i) out.push_back(tidy(start + static_cast<double>(i) * step));
  return out;
}

std::vector<double> parse_p_h(const Json& j) {
  if (j.is_number()) return {get_number(j, "p_h")};
  if (j.is_array()) return get_number_list(j, "p_h");
  if (j.is_object()) {
    check_keys(j, "p_h", {"start", "stop", "step"});
    if (!j.contains("start") || !j.contains("stop") || !j.contains("step")) fail("p_h", "range needs start, stop and step");
    return range(get_number(j["start"], "p_h.start"), get_number(j["stop"], "p_h.stop"),
                 get_number(j["step"], "p_h.step"), "p_h");
  }
  fail("p_h", "must be a number, a list or a {start, stop, step} range");
}

Matrix parse_matrix(const Json& j, int m, const std::string& key) {
  if (!j.is_array()) fail(key, "must be a matrix");
  Matrix out(m, m);
  if (!j.empty() && j[0].is_array()) {
    if (static_cast<int>(j.size()) != m) fail(key, "must have M rows");
    for (int r = 0; r < m; ++r) {
      const auto row = get_number_list(j[static_cast<std::size_t>(r)], key);
      if (static_cast<int>(row.size()) != m) fail(key, "must have M columns");
      for (int c = 0; c < m; ++c) out(r, c) = row[static_cast<std::size_t>(c)];
    }
  } else {
    const auto flat = get_number_list(j, key);
    if (static_cast<int>(flat.size()) != m * m) fail(key, "flat form must hold M*M entries");
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) out(r, c) = flat[static_cast<std::size_t>(r * m + c)];
  }
  return out;
}

void parse_means(const Json& j, analysis::ModelSpec& spec) {
  if (j.is_object()) {
    check_keys(j, "means", {"simplex"});
    if (!j.contains("simplex")) fail("means", "object form needs 'simplex'");
    const auto& s = j["simplex"];
    check_keys(s, "means.simplex", {"gamma0"});
    if (s.contains("gamma0")) spec.simplex_gamma0 = get_number(s["gamma0"], "means.simplex.gamma0");
    spec.means.reset();
    return;
  }
  if (!j.is_array()) fail("means", "must be a list of vectors or {\"simplex\": {...}}");
  if (static_cast<int>(j.size()) != spec.num_classes) fail("means", "must hold M vectors");
  std::vector<Vector> means;
  for (const auto& row : j) {
    const auto v = get_number_list(row, "means");
    if (static_cast<int>(v.size()) != spec.feature_dim) fail("means", "vectors must have F entries");
    means.emplace_back(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
  }
  spec.means = std::move(means);
}

void parse_alpha(const Json& j, analysis::AlphaPolicy& policy) {
  using analysis::AlphaPolicyKind;
  auto kind_from = [](const std::string& s) {
    if (s == "grid") return AlphaPolicyKind::grid;
    if (s == "closed_form") return AlphaPolicyKind::closed_form;
    if (s == "fixed") return AlphaPolicyKind::fixed;
    fail("alpha", "policy must be grid, closed_form or fixed, got '" + s + "'");
  };
  if (j.is_number()) {
    policy.kind = AlphaPolicyKind::fixed;
    policy.value = j.get<double>();
  } else if (j.is_string()) {
    policy.kind = kind_from(j.get<std::string>());
    if (policy.kind == AlphaPolicyKind::fixed) fail("alpha", "fixed policy needs a value");
  } else if (j.is_object()) {
    check_keys(j, "alpha", {"policy", "lo", "hi", "step", "value"});
    if (!j.contains("policy") || !j["policy"].is_string()) fail("alpha.policy", "must be a string");
    policy.kind = kind_from(j["policy"].get<std::string>());
    if (j.contains("lo")) policy.grid.lo = get_number(j["lo"], "alpha.lo");
    if (j.contains("hi")) policy.grid.hi = get_number(j["hi"], "alpha.hi");
    if (j.contains("step")) policy.grid.step = get_number(j["step"], "alpha.step");
    if (j.contains("value")) policy.value = get_number(j["value"], "alpha.value");
    else if (policy.kind == AlphaPolicyKind::fixed) fail("alpha", "fixed policy needs a value");
    (void)policy.grid.points();
  } else {
    fail("alpha", "must be a policy name, a number or an object");
  }
}

void parse_graph(const Json& j, GraphSpec& g) {
  check_keys(j, "graph", {"N", "degree", "features"});
  if (j.contains("N")) {
    const auto n = get_integer(j["N"], "graph.N");
    if (n < 2 || n > 100000000) fail("graph.N", "must lie in [2, 1e8]");
    g.num_nodes = static_cast<int>(n);
  }
  if (j.contains("features")) {
    if (!j["features"].is_boolean()) fail("graph.features", "must be true or false");
    g.features = j["features"].get<bool>();
  }
  if (j.contains("degree")) {
    const auto& d = j["degree"];
    check_keys(d, "graph.degree", {"constant", "explicit", "power_law"});
    if (d.size() != 1) fail("graph.degree", "must hold exactly one of constant, explicit, power_law");
    if (d.contains("constant")) {
      g.degrees = synth::ConstantDegree{get_number(d["constant"], "graph.degree.constant")};
    } else if (d.contains("explicit")) {
      g.degrees = synth::ExplicitDegrees{get_number_list(d["explicit"], "graph.degree.explicit")};
    } else {
      const auto& p = d["power_law"];
      check_keys(p, "graph.degree.power_law", {"exponent", "min", "max"});
      synth::PowerLawDegrees pl;
      if (p.contains("exponent")) pl.exponent = get_number(p["exponent"], "graph.degree.power_law.exponent");
      if (p.contains("min")) pl.min = get_number(p["min"], "graph.degree.power_law.min");
      if (p.contains("max")) pl.max = get_number(p["max"], "graph.degree.power_law.max");
      g.degrees = pl;
    }
  }
}

void parse_overlap(const Json& j, analysis::OverlapDemoParams& o) {
  check_keys(j, "overlap", {"mu1", "mu2", "sigma", "prior1"});
  if (j.contains("mu1")) o.mu1 = get_number(j["mu1"], "overlap.mu1");
  if (j.contains("mu2")) o.mu2 = get_number(j["mu2"], "overlap.mu2");
  if (j.contains("sigma")) o.sigma = get_number(j["sigma"], "overlap.sigma");
  if (j.contains("prior1")) o.prior1 = get_number(j["prior1"], "overlap.prior1");
  if (!(o.sigma > 0.0)) fail("overlap.sigma", "must be positive");
}

}  // namespace

std::vector<double> default_p_h_grid() { return range(0.0, 1.0, 0.05, "p_h"); }

RunConfig parse_config(const Json& root) {
  const Json& doc = root.is_object() && root.contains("config") ? root["config"] : root;
  check_keys(doc, "", {"M", "F", "sigma", "priors", "means", "P", "special_case", "p_h", "degrees", "alpha",
                       "aggregators", "trials", "seed", "K", "gin_eps", "graph", "overlap"});
  RunConfig out;
  auto& e = out.experiment;
  auto& m = e.model;
  if (doc.contains("M")) m.num_classes = static_cast<int>(get_integer(doc["M"], "M"));
  if (doc.contains("F")) m.feature_dim = static_cast<int>(get_integer(doc["F"], "F"));
  if (m.num_classes < 2) fail("M", "must be at least 2");
  if (m.feature_dim < 1) fail("F", "must be positive");
  if (doc.contains("sigma")) m.sigma = get_number(doc["sigma"], "sigma");
  if (!(m.sigma > 0.0)) fail("sigma", "must be positive");
  if (doc.contains("priors")) {
    const auto p = get_number_list(doc["priors"], "priors");
    if (static_cast<int>(p.size()) != m.num_classes) fail("priors", "must hold M entries");
    m.priors = Eigen::Map<const Vector>(p.data(), static_cast<Eigen::Index>(p.size()));
  }
  if (doc.contains("means")) parse_means(doc["means"], m);

  if (doc.contains("P")) {
    if (doc.contains("special_case")) fail("P", "cannot be combined with special_case");
    e.special_case = 0;
    e.transition = parse_matrix(doc["P"], m.num_classes, "P");
    if (doc.contains("p_h")) fail("p_h", "only applies to special cases");
  } else {
    e.special_case = doc.contains("special_case") ? static_cast<int>(get_integer(doc["special_case"], "special_case")) : 1;
    (void)analysis::special_case_classes(e.special_case);
    e.p_h_values = doc.contains("p_h") ? parse_p_h(doc["p_h"]) : default_p_h_grid();
  }

  if (doc.contains("degrees")) {
    if (!doc["degrees"].is_array()) fail("degrees", "must be a list of integers");
    e.degrees.clear();
    for (const auto& d : doc["degrees"]) {
      const auto v = get_integer(d, "degrees");
      if (v < 0 || v > 1000000) fail("degrees", "entries must lie in [0, 1e6]");
      e.degrees.push_back(static_cast<int>(v));
    }
  } else {
    e.degrees = {1, 2, 4, 8};
  }
  if (doc.contains("alpha")) parse_alpha(doc["alpha"], e.alpha);
  if (doc.contains("aggregators")) {
    if (!doc["aggregators"].is_array()) fail("aggregators", "must be a list of names");
    for (const auto& a : doc["aggregators"]) {
      if (!a.is_string()) fail("aggregators", "must be a list of names");
      e.aggregators.push_back(analysis::aggregator_from_name(a.get<std::string>()));
    }
  } else {
    e.aggregators = {analysis::Aggregator::agnostic, analysis::Aggregator::wsa, analysis::Aggregator::sca};
  }
  if (doc.contains("trials")) e.trials = get_unsigned(doc["trials"], "trials");
  if (doc.contains("seed")) e.seed = get_unsigned(doc["seed"], "seed");
  if (doc.contains("K")) e.hops = static_cast<int>(get_integer(doc["K"], "K"));
  if (doc.contains("gin_eps")) e.gin_eps = get_number(doc["gin_eps"], "gin_eps");
  if (doc.contains("graph")) parse_graph(doc["graph"], out.graph);
  if (doc.contains("overlap")) parse_overlap(doc["overlap"], out.overlap);
  return out;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error("config file " + path.string() + " is not valid JSON: " + ex.what());
  }
  try {
    return parse_config(doc);
  } catch (const Error& ex) {
    throw Error(path.string() + ": " + ex.what());
  }
}

Json to_json(const RunConfig& config) {
  const auto& e = config.experiment;
  const auto& m = e.model;
  Json j;
  j["M"] = m.num_classes;
  j["F"] = m.feature_dim;
  j["sigma"] = m.sigma;
  if (m.priors) j["priors"] = std::vector<double>(m.priors->data(), m.priors->data() + m.priors->size());
  if (m.means) {
    Json rows = Json::array();
    for (const auto& v : *m.means) rows.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    j["means"] = rows;
  } else {
    j["means"] = {{"simplex", {{"gamma0", m.simplex_gamma0}}}};
  }
  if (e.special_case == 0) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < e.transition->rows(); ++r) {
      std::vector<double> row;
      for (Eigen::Index c = 0; c < e.transition->cols(); ++c) row.push_back((*e.transition)(r, c));
      rows.push_back(row);
    }
    j["P"] = rows;
  } else {
    j["special_case"] = e.special_case;
    j["p_h"] = e.p_h_values;
  }
  j["degrees"] = e.degrees;
  const char* policy = e.alpha.kind == analysis::AlphaPolicyKind::grid          ? "grid"
                       : e.alpha.kind == analysis::AlphaPolicyKind::closed_form ? "closed_form"
                                                                                : "fixed";
  j["alpha"] = {{"policy", policy}, {"lo", e.alpha.grid.lo}, {"hi", e.alpha.grid.hi},
                {"step", e.alpha.grid.step}, {"value", e.alpha.value}};
  Json aggs = Json::array();
  for (auto a : e.aggregators) aggs.push_back(std::string(analysis::aggregator_name(a)));
  j["aggregators"] = aggs;
  j["trials"] = e.trials;
  j["seed"] = e.seed;
  j["K"] = e.hops;
  j["gin_eps"] = e.gin_eps;

  Json degree;
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, synth::ConstantDegree>) {
          degree = {{"constant", spec.degree}};
        } else if constexpr (std::is_same_v<T, synth::ExplicitDegrees>) {
          degree = {{"explicit", spec.degrees}};
        } else {
          degree = {{"power_law", {{"exponent", spec.exponent}, {"min", spec.min}, {"max", spec.max}}}};
        }
      },
      config.graph.degrees);
  j["graph"] = {{"N", config.graph.num_nodes}, {"degree", degree}, {"features", config.graph.features}};
  j["overlap"] = {{"mu1", config.overlap.mu1}, {"mu2", config.overlap.mu2}, {"sigma", config.overlap.sigma},
                  {"prior1", config.overlap.prior1}};
  return j;
}

}  // namespace graphsig::cli
