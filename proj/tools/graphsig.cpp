#include "graphsig/analysis/experiment.hpp"
#include "graphsig/analysis/homophily.hpp"
#include "graphsig/analysis/overlap.hpp"
#include "graphsig/cli/config.hpp"
#include "graphsig/cli/output.hpp"
#include "graphsig/synth/dcsbm.hpp"
#include "graphsig/synth/graph.hpp"

#include "CLI11.hpp"

#include <omp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace graphsig;

namespace {

constexpr int kExitCellFailures = 1;
constexpr int kExitError = 2;

struct CommonOptions {
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  int workers = 0;
};

struct HomophilyOptions {
  std::string edges;
  std::string labels;
  std::string features;
  bool allow_unlabeled = false;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("graphsig");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("GRAPHSIG_LOG")) {
    const auto level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string(env) != "off") {
      spdlog::warn("GRAPHSIG_LOG='{}' is not a level name; keeping 'warn'", env);
    } else {
      spdlog::set_level(level);
    }
  }
}

void apply_workers(int workers) {
  if (workers < 0) throw Error("--workers must be positive");
  if (workers > 0) omp_set_num_threads(workers);
}

cli::RunConfig load(const CommonOptions& o, bool required) {
  cli::RunConfig cfg;
  if (!o.config.empty()) {
    cfg = cli::load_config(o.config);
  } else if (required) {
    throw Error("--config is required for this command");
  } else {
    cfg = cli::parse_config(cli::Json::object());
  }
  if (o.seed) cfg.experiment.seed = *o.seed;
  if (o.trials) cfg.experiment.trials = *o.trials;
  return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_outputs(const fs::path& dir, const std::vector<std::pair<std::string, std::string>>& files,
                   cli::ManifestInfo manifest) {
  for (const auto& [name, content] : files) {
    cli::write_file_atomic(dir / name, content);
    manifest.outputs.push_back(name);
    spdlog::info("wrote {}", (dir / name).string());
  }
  cli::write_file_atomic(dir / "manifest.json", cli::make_manifest(manifest).dump(2) + "\n");
}

int report_failures(const std::vector<analysis::CellFailure>& failures) {
  if (failures.empty()) return 0;
  std::cerr << failures.size() << " cell(s) failed:\n";
  for (const auto& f : failures) {
    std::cerr << "  aggregator=" << analysis::aggregator_name(f.aggregator) << " p_h=" << f.p_h
              << " degree=" << f.degree << ": " << f.message << "\n";
  }
  return kExitCellFailures;
}

int cmd_simulate(const CommonOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = load(o, true);
  apply_workers(o.workers);
  cli::prepare_output_dir(o.out);
  spdlog::info("simulating {} p_h value(s) x {} degree(s), {} trials per cell",
               cfg.experiment.special_case == 0 ? 1 : cfg.experiment.p_h_values.size(),
               cfg.experiment.degrees.size(), cfg.experiment.trials);
  const auto result = analysis::run_monte_carlo(cfg.experiment);
  write_outputs(o.out, {{"errors.csv", cli::errors_csv(result)}, {"deflections.csv", cli::deflections_csv(result)}},
                {"simulate", cli::to_json(cfg), cfg.experiment.seed, seconds_since(t0), result.cells.size(), {}});
  return report_failures(result.failures);
}

int cmd_bound(const CommonOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = load(o, true);
  cli::prepare_output_dir(o.out);
  const auto result = analysis::evaluate_cells(cfg.experiment);
  write_outputs(o.out, {{"bounds.csv", cli::bounds_csv(result)}, {"deflections.csv", cli::deflections_csv(result)}},
                {"bound", cli::to_json(cfg), cfg.experiment.seed, seconds_since(t0), result.cells.size(), {}});
  return report_failures(result.failures);
}

int cmd_optimize_alpha(const CommonOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = load(o, true);
  cli::prepare_output_dir(o.out);
  const auto rows = analysis::alpha_table(cfg.experiment);
  write_outputs(o.out, {{"alpha.csv", cli::alpha_csv(rows)}},
                {"optimize-alpha", cli::to_json(cfg), cfg.experiment.seed, seconds_since(t0), rows.size(), {}});
  return 0;
}

int cmd_gen_graph(const CommonOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = load(o, true);
  apply_workers(o.workers);
  cli::prepare_output_dir(o.out);
  const auto& e = cfg.experiment;
  const auto model = analysis::make_model(e.model);
  std::optional<model::TransitionMatrix> p;
  if (e.special_case == 0) {
    p.emplace(*e.transition);
  } else {
    if (e.p_h_values.size() != 1) throw Error("gen-graph needs exactly one p_h value");
    p.emplace(analysis::special_case_transition(e.special_case, e.p_h_values.front()));
  }
  const auto g = synth::generate_dcsbm(model, *p, cfg.graph.degrees, cfg.graph.num_nodes, e.seed);
  spdlog::info("generated {} nodes, {} edges, {} clamped pairs", g.graph.num_nodes(), g.graph.num_edges(),
               g.report.clamped_pairs);
  std::ostringstream edges;
  std::ostringstream labels;
  std::ostringstream features;
  synth::write_graph(g.graph, edges, labels, cfg.graph.features ? &features : nullptr);
  std::vector<std::pair<std::string, std::string>> files = {{"edges.txt", edges.str()}, {"labels.csv", labels.str()}};
  if (cfg.graph.features) files.emplace_back("features.csv", features.str());
  write_outputs(o.out, files, {"gen-graph", cli::to_json(cfg), e.seed, seconds_since(t0), 0, {}});
  return 0;
}

int cmd_homophily(const CommonOptions& o, const HomophilyOptions& h) {
  const auto t0 = std::chrono::steady_clock::now();
  apply_workers(o.workers);
  cli::prepare_output_dir(o.out);
  synth::LoadOptions opts;
  opts.allow_unlabeled = h.allow_unlabeled;
  std::optional<fs::path> features;
  if (!h.features.empty()) features = h.features;
  const auto loaded = synth::load_graph(h.edges, h.labels, features, opts);
  if (loaded.report.self_loops_dropped + loaded.report.duplicates_dropped > 0) {
    spdlog::warn("dropped {} self-loop(s) and {} duplicate edge(s)", loaded.report.self_loops_dropped,
                 loaded.report.duplicates_dropped);
  }
  const auto report = analysis::homophily_stats(loaded.graph);
  cli::Json echo = {{"edges", h.edges}, {"labels", h.labels}, {"allow_unlabeled", h.allow_unlabeled}};
  write_outputs(o.out,
                {{"homophily.csv", cli::homophily_csv(report)},
                 {"homophily_nodes.csv", cli::homophily_nodes_csv(loaded.graph, report)}},
                {"homophily", echo, 0, seconds_since(t0), report.per_degree.size(), {}});
  return 0;
}

int cmd_demo_overlap(const CommonOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = load(o, false);
  cli::prepare_output_dir(o.out);
  const auto panels = analysis::overlap_demo(cfg.overlap);
  for (const auto& p : panels) spdlog::info("{}: overlap {}", p.name, p.result.error);
  write_outputs(o.out,
                {{"overlap.csv", cli::overlap_csv(panels)}, {"overlap_densities.csv", cli::overlap_densities_csv(panels)}},
                {"demo-overlap", cli::to_json(cfg)["overlap"], 0, seconds_since(t0), panels.size(), {}});
  return 0;
}

void add_common(CLI::App* cmd, CommonOptions& o, bool config_flag = true) {
  if (config_flag) cmd->add_option("--config", o.config, "Config document (JSON) or run manifest");
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd->add_option("--workers", o.workers, "OpenMP threads (default: runtime choice)");
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Statistical node-classification toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cli::tool_version()));

  CommonOptions o;
  HomophilyOptions h;

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo error rates per (aggregator, p_h, degree)");
  add_common(simulate, o);
  simulate->add_option("--seed", o.seed, "Override the config seed");
  simulate->add_option("--trials", o.trials, "Override trials per cell");

  auto* alpha = app.add_subcommand("optimize-alpha", "Grid-search the WSA neighbor weight");
  add_common(alpha, o);

  auto* bound = app.add_subcommand("bound", "Deflections and union error bounds without simulation");
  add_common(bound, o);

  auto* gen = app.add_subcommand("gen-graph", "Sample a degree-corrected SBM graph with features");
  add_common(gen, o);
  gen->add_option("--seed", o.seed, "Override the config seed");

  auto* homophily = app.add_subcommand("homophily", "Per-degree homophily of a labeled graph");
  add_common(homophily, o, false);
  homophily->add_option("--edges", h.edges, "Edge list")->required();
  homophily->add_option("--labels", h.labels, "node_id,label file")->required();
  homophily->add_option("--features", h.features, "node_id,f1,...,fF file");
  homophily->add_flag("--allow-unlabeled", h.allow_unlabeled, "Keep nodes without a label");

  auto* overlap = app.add_subcommand("demo-overlap", "1-D density overlap before and after pairwise averaging");
  add_common(overlap, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(o);
    if (alpha->parsed()) return cmd_optimize_alpha(o);
    if (bound->parsed()) return cmd_bound(o);
    if (gen->parsed()) return cmd_gen_graph(o);
    if (homophily->parsed()) return cmd_homophily(o, h);
    if (overlap->parsed()) return cmd_demo_overlap(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
