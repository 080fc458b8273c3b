#include "graphsig/cli/output.hpp"

#include "graphsig/format.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#ifndef GRAPHSIG_VERSION
#define GRAPHSIG_VERSION "unknown"
#endif

namespace graphsig::cli {

namespace {

std::string fmt_or_empty(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string cell_prefix(const analysis::CellResult& c) {
  return std::string(analysis::aggregator_name(c.aggregator)) + "," + std::to_string(c.special_case) + "," +
         format_double(c.p_h) + "," + std::to_string(c.degree);
}

}  // namespace

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string errors_csv(const analysis::MonteCarloResult& result) {
  std::string out = "aggregator,case,p_h,degree,trials,error,stderr,bound,alpha_star,note\n";
  for (const auto& c : result.cells) {
    out += cell_prefix(c) + "," + std::to_string(c.trials) + "," + format_double(c.error) + "," +
           format_double(c.std_error) + "," + format_double(c.bound) + "," + fmt_or_empty(c.alpha_star) + "," +
           csv_field(c.note) + "\n";
  }
  return out;
}

std::string deflections_csv(const analysis::MonteCarloResult& result) {
  std::string out = "aggregator,case,p_h,degree,m,l,gamma\n";
  for (const auto& c : result.cells) {
    const int m_count = c.deflections.num_classes();
    for (int m = 0; m < m_count; ++m) {
      for (int l = m + 1; l < m_count; ++l) {
        out += cell_prefix(c) + "," + std::to_string(m + 1) + "," + std::to_string(l + 1) + "," +
               format_double(c.deflections(m, l)) + "\n";
      }
    }
  }
  return out;
}

std::string bounds_csv(const analysis::MonteCarloResult& result) {
  std::string out = "aggregator,case,p_h,degree,bound,alpha_star\n";
  for (const auto& c : result.cells) {
    out += cell_prefix(c) + "," + format_double(c.bound) + "," + fmt_or_empty(c.alpha_star) + "\n";
  }
  return out;
}

std::string alpha_csv(const std::vector<analysis::AlphaRow>& rows) {
  std::string out = "case,p_h,degree,alpha_star,bound,closed_form\n";
  for (const auto& r : rows) {
    out += std::to_string(r.special_case) + "," + format_double(r.p_h) + "," + std::to_string(r.degree) + "," +
           format_double(r.alpha) + "," + format_double(r.bound) + "," + fmt_or_empty(r.closed_form) + "\n";
  }
  return out;
}

std::string homophily_csv(const analysis::HomophilyReport& report) {
  std::string out = "degree,count,mean_kappa,std_kappa\n";
  double sum_sq = 0.0;
  for (const auto& d : report.per_degree) {
    out += std::to_string(d.degree) + "," + std::to_string(d.count) + "," + format_double(d.mean) + "," +
           format_double(d.std_dev) + "\n";
    const double n = static_cast<double>(d.count);
    sum_sq += n * (d.std_dev * d.std_dev + d.mean * d.mean);
  }
  const double n = static_cast<double>(report.nodes_used);
  const double var = std::max(0.0, sum_sq / n - report.global * report.global);
  out += "global," + std::to_string(report.nodes_used) + "," + format_double(report.global) + "," +
         format_double(std::sqrt(var)) + "\n";
  return out;
}

std::string homophily_nodes_csv(const synth::LabeledGraph& graph, const analysis::HomophilyReport& report) {
  std::string out = "node,degree,kappa\n";
  for (int i = 0; i < graph.num_nodes(); ++i) {
    const double k = report.kappa[static_cast<std::size_t>(i)];
    if (std::isnan(k)) continue;
    out += std::to_string(graph.node_id(i)) + "," + std::to_string(graph.degree(i)) + "," + format_double(k) + "\n";
  }
  return out;
}

std::string overlap_csv(const std::vector<analysis::OverlapPanel>& panels) {
  std::string out = "panel,overlap\n";
  for (const auto& p : panels) out += p.name + "," + format_double(p.result.error) + "\n";
  return out;
}

std::string overlap_densities_csv(const std::vector<analysis::OverlapPanel>& panels) {
  std::string out = "panel,x,f1,f2\n";
  for (const auto& p : panels) {
    for (std::size_t i = 0; i < p.result.x.size(); ++i) {
      out += p.name + "," + format_double(p.result.x[i]) + "," + format_double(p.result.f1[i]) + "," +
             format_double(p.result.f2[i]) + "\n";
    }
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place at " + path.string());
  }
}

void prepare_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw Error("cannot create output directory " + dir.string());
  const auto probe = dir / ".graphsig-write-probe";
  {
    std::ofstream out(probe);
    if (!out) throw Error("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

Json make_manifest(const ManifestInfo& info) {
  Json j;
  j["tool"] = "graphsig";
  j["version"] = std::string(tool_version());
  j["command"] = info.command;
  j["seed"] = info.seed;
  j["duration_seconds"] = info.duration_seconds;
  j["cells"] = info.cells;
  j["outputs"] = info.outputs;
  j["config"] = info.config;
  return j;
}

std::string_view tool_version() { return GRAPHSIG_VERSION; }

}  // namespace graphsig::cli
