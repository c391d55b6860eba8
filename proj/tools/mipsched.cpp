#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mipsched/harness.hpp"
#include "mipsched/mps.hpp"

namespace fs = std::filesystem;
using namespace mipsched;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    if constexpr (std::is_floating_point_v<T>) {
      out.push_back(static_cast<T>(std::stod(item, &used)));
    } else {
      out.push_back(static_cast<T>(std::stoull(item, &used)));
    }
    if (used != item.size()) throw std::invalid_argument("bad list element '" + item + "'");
  }
  return out;
}

struct CommonOptions {
  std::string mode = "scheduler";
  std::uint64_t seed = 0;
  std::optional<double> time_limit;
  std::optional<long> node_limit;
  std::string config;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--mode", o.mode, "default | scheduler (also rounding, none)");
  cmd->add_option("--time-limit", o.time_limit, "seconds");
  cmd->add_option("--node-limit", o.node_limit, "branch-and-bound nodes");
  cmd->add_option("--config", o.config, "file of key = value overrides");
}

SolverSettings build_settings(const CommonOptions& o) {
  SolverSettings s;
  if (!o.config.empty()) apply_config_text(s, read_file(o.config));
  auto mode = parse_mode(o.mode);
  if (!mode) throw ConfigError("unknown mode '" + o.mode + "'");
  s.mode = *mode;
  s.seed = o.seed;
  if (o.time_limit) s.time_limit_s = *o.time_limit;
  if (o.node_limit) s.node_limit = *o.node_limit;
  return s;
}

// Manifest entries that name files are taken relative to the manifest.
std::string resolve_entry(const std::string& entry, const fs::path& manifest_dir) {
  if (entry.starts_with("gen:")) return entry;
  const fs::path p(entry);
  if (p.is_absolute() || fs::exists(p)) return entry;
  const fs::path alt = manifest_dir / p;
  return fs::exists(alt) ? alt.string() : entry;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-integer solver with an adaptive primal heuristic scheduler"};
  app.require_subcommand(1);

  CommonOptions solve_opts;
  std::string solve_uri;
  std::string log_path;
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance (MPS path or gen: URI)");
  solve_cmd->add_option("uri", solve_uri)->required();
  solve_cmd->add_option("--seed", solve_opts.seed);
  solve_cmd->add_option("--log", log_path, "JSONL call log");
  add_common(solve_cmd, solve_opts);

  CommonOptions bench_opts;
  std::string manifest;
  std::string seeds_text = "1,2,3,4";
  std::string modes_text = "default,scheduler";
  std::string out_path;
  int jobs = 1;
  auto* bench_cmd = app.add_subcommand("bench", "run a manifest under both modes");
  bench_cmd->add_option("manifest", manifest)->required();
  bench_cmd->add_option("--seeds", seeds_text);
  bench_cmd->add_option("--modes", modes_text);
  bench_cmd->add_option("--out", out_path)->required();
  bench_cmd->add_option("--jobs", jobs);
  add_common(bench_cmd, bench_opts);

  std::string csv_path;
  std::string brackets_text = "1,10,30";
  SummaryOptions summary_opts;
  auto* sum_cmd = app.add_subcommand("summarize", "shifted geometric mean table");
  sum_cmd->add_option("csv", csv_path)->required();
  sum_cmd->add_option("--brackets", brackets_text);
  sum_cmd->add_option("--time-limit", summary_opts.time_limit);
  sum_cmd->add_option("--time-shift", summary_opts.time_shift);
  sum_cmd->add_option("--node-shift", summary_opts.node_shift);
  sum_cmd->add_option("--heurtime-shift", summary_opts.heurtime_shift);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      const SolverSettings s = build_settings(solve_opts);
      std::ofstream log_file;
      std::ostream* log = nullptr;
      if (!log_path.empty()) {
        log_file.open(log_path);
        if (!log_file) throw std::runtime_error("cannot write " + log_path);
        log = &log_file;
      }
      const RunStats stats = run_instance(solve_uri, s, log);
      std::cout << run_stats_json(stats) << '\n';
      return 0;
    }
    if (*bench_cmd) {
      BenchOptions opt;
      opt.base = build_settings(bench_opts);
      opt.seeds = parse_list<std::uint64_t>(seeds_text);
      opt.modes.clear();
      std::stringstream ms(modes_text);
      for (std::string m; std::getline(ms, m, ',');) {
        auto parsed = parse_mode(m);
        if (!parsed) throw ConfigError("unknown mode '" + m + "'");
        opt.modes.push_back(*parsed);
      }
      opt.jobs = jobs;
      const fs::path dir = fs::path(manifest).parent_path();
      std::vector<std::string> instances;
      for (const auto& e : read_manifest(read_file(manifest))) instances.push_back(resolve_entry(e, dir));
      const auto rows = run_bench(instances, opt);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      write_csv(out, rows);
      long errors = 0;
      for (const auto& r : rows) errors += r.status == "error";
      std::cerr << rows.size() << " runs written to " << out_path;
      if (errors) std::cerr << " (" << errors << " failed)";
      std::cerr << '\n';
      return 0;
    }
    if (*sum_cmd) {
      summary_opts.brackets = parse_list<double>(brackets_text);
      const auto rows = summarize(parse_csv(read_file(csv_path)), summary_opts);
      std::cout << format_summary(rows);
      return 0;
    }
  } catch (const MpsError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
