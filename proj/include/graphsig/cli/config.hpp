#pragma once

#include "graphsig/analysis/experiment.hpp"
#include "graphsig/analysis/overlap.hpp"
#include "graphsig/synth/dcsbm.hpp"

#include "json.hpp"

#include <filesystem>

namespace graphsig::cli {

using Json = nlohmann::ordered_json;

struct GraphSpec {
  int num_nodes = 10000;
  synth::DegreeSpec degrees = synth::ConstantDegree{10.0};
  bool features = true;
};

/// Everything a subcommand may read from a config document.
struct RunConfig {
  analysis::ExperimentConfig experiment;
  GraphSpec graph;
  analysis::OverlapDemoParams overlap;
};

/// Config document keys:
///   M, F, sigma, priors                  model
///   means: [[...], ...] | {"simplex": {"gamma0": g}}
///   P: [[...], ...] | flat row-major list         explicit transition matrix
///   special_case: 1|2|3, p_h: [..] | {"start","stop","step"} | number
///   degrees: [..]
///   alpha: "grid" | "closed_form" | number
///          | {"policy": "grid"|"closed_form"|"fixed", "lo", "hi", "step", "value"}
///   aggregators: [..], trials, seed, K, gin_eps
///   graph: {"N", "degree": {"constant": d} | {"explicit": [..]}
///                          | {"power_law": {"exponent", "min", "max"}}, "features"}
///   overlap: {"mu1", "mu2", "sigma", "prior1"}
/// A run manifest is accepted too: its "config" member is used.
/// Unknown keys are errors.
RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved config; parse_config(to_json(c)) reproduces c.
Json to_json(const RunConfig& config);

/// Default p_h grid {0, 0.05, ..., 1}.
std::vector<double> default_p_h_grid();

}  // namespace graphsig::cli
