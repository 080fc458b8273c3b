#pragma once

#include "graphsig/analysis/experiment.hpp"
#include "graphsig/analysis/homophily.hpp"
#include "graphsig/analysis/overlap.hpp"
#include "graphsig/cli/config.hpp"
#include "graphsig/synth/graph.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace graphsig::cli {

/// Quotes a field when it holds a comma, quote or newline.
std::string csv_field(std::string_view text);

std::string errors_csv(const analysis::MonteCarloResult& result);
std::string deflections_csv(const analysis::MonteCarloResult& result);
std::string bounds_csv(const analysis::MonteCarloResult& result);
std::string alpha_csv(const std::vector<analysis::AlphaRow>& rows);
std::string homophily_csv(const analysis::HomophilyReport& report);
std::string homophily_nodes_csv(const synth::LabeledGraph& graph, const analysis::HomophilyReport& report);
std::string overlap_csv(const std::vector<analysis::OverlapPanel>& panels);
std::string overlap_densities_csv(const std::vector<analysis::OverlapPanel>& panels);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Creates `dir` if needed and checks that it accepts files.
void prepare_output_dir(const std::filesystem::path& dir);

struct ManifestInfo {
  std::string command;
  Json config;
  std::uint64_t seed = 0;
  double duration_seconds = 0.0;
  std::size_t cells = 0;
  std::vector<std::string> outputs;
};

Json make_manifest(const ManifestInfo& info);

std::string_view tool_version();

}  // namespace graphsig::cli
