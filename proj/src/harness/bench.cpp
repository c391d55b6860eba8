#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "mipsched/generate.hpp"
#include "mipsched/harness.hpp"

namespace mipsched {

RunStats run_instance(const std::string& uri, const SolverSettings& settings,
                      std::ostream* call_log) {
  const MipModel model = load_instance(uri);
  const SolveResult result = solve(model, settings);
  RunStats stats = make_run_stats(uri, model, settings, result);
  if (call_log) {
    for (const auto& rec : result.call_log) *call_log << call_record_json(rec) << '\n';
    *call_log << run_stats_json(stats) << '\n';
  }
  return stats;
}

std::vector<std::string> read_manifest(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.emplace_back(line.substr(b, e - b + 1));
  }
  return out;
}

std::vector<RunStats> run_bench(const std::vector<std::string>& instances,
                                const BenchOptions& options) {
  struct Job {
    const std::string* uri;
    std::uint64_t seed;
    HeuristicMode mode;
  };
  std::vector<Job> jobs;
  for (const auto& uri : instances)
    for (auto seed : options.seeds)
      for (auto mode : options.modes) jobs.push_back({&uri, seed, mode});

  std::vector<RunStats> rows(jobs.size());
  auto run_one = [&](std::size_t i) {
    SolverSettings s = options.base;
    s.seed = jobs[i].seed;
    s.mode = jobs[i].mode;
    try {
      rows[i] = run_instance(*jobs[i].uri, s);
    } catch (const std::exception&) {
      RunStats failed;
      failed.instance = *jobs[i].uri;
      failed.seed = s.seed;
      failed.mode = s.mode;
      failed.status = "error";
      failed.objective = std::nan("");
      rows[i] = failed;
    }
  };

  const int workers = std::max(1, options.jobs);
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) run_one(i);
    });
  for (auto& t : pool) t.join();
  return rows;
}

void write_csv(std::ostream& out, const std::vector<RunStats>& rows) {
  const auto header = csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
}

}  // namespace mipsched
