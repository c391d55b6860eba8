#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mipsched/bnb.hpp"
#include "mipsched/settings.hpp"

namespace mipsched {

// ---- configuration -------------------------------------------------------

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Applies one `key = value` override; throws ConfigError on unknown keys.
void apply_setting(SolverSettings& settings, std::string_view key,
                   std::string_view value);

/// Flat `key = value` lines; `#` starts a comment.
void apply_config_text(SolverSettings& settings, std::string_view text);

std::vector<std::string> known_setting_keys();

// ---- per-run statistics --------------------------------------------------

struct ArmStats {
  long pulls = 0;
  long successes = 0;
  double mean_reward = 0.0;
  double final_limit = 0.0;
};

struct RunStats {
  std::string instance;
  std::uint64_t seed = 0;
  HeuristicMode mode = HeuristicMode::Scheduler;
  std::string status;
  double objective = 0.0;
  double time_s = 0.0;
  long nodes = 0;
  long incumbents_found_by_heuristics = 0;
  long heuristic_calls = 0;
  long heuristic_successes = 0;
  double heurtime_s = 0.0;
  long conflicts = 0;
  std::string most_pulled;  // empty without scheduler records
  double most_pulled_mean_reward = 0.0;
  double portfolio_mean_reward = 0.0;
  std::array<ArmStats, kNumHeuristics> arms{};
};

RunStats make_run_stats(const std::string& instance, const MipModel& model,
                        const SolverSettings& settings, const SolveResult& result);

/// Stable CSV schema.
std::vector<std::string> csv_header();
/// Columns whose values depend on wall-clock time.
std::vector<std::string> timing_columns();
std::string csv_row(const RunStats& stats);
std::string run_stats_json(const RunStats& stats);
std::string call_record_json(const CallRecord& record);

// ---- CSV reading ---------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(std::string_view name) const;  // -1 if missing
};

CsvTable parse_csv(std::string_view text);

// ---- running -------------------------------------------------------------

/// Solves one instance and optionally writes the JSONL call log.
RunStats run_instance(const std::string& uri, const SolverSettings& settings,
                      std::ostream* call_log = nullptr);

struct BenchOptions {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4};
  std::vector<HeuristicMode> modes{HeuristicMode::Default, HeuristicMode::Scheduler};
  SolverSettings base;
  int jobs = 1;
};

std::vector<std::string> read_manifest(std::string_view text);

/// instances x seeds x modes; failing runs become rows with status "error".
std::vector<RunStats> run_bench(const std::vector<std::string>& instances,
                                const BenchOptions& options);

void write_csv(std::ostream& out, const std::vector<RunStats>& rows);

// ---- aggregation ---------------------------------------------------------

class EmptyInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class SchemaMismatch : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// exp(mean(ln(v + shift))) - shift
double shifted_geomean(const std::vector<double>& values, double shift);

struct ModeSummary {
  long solved = 0;
  double time = 0.0;
  double nodes = 0.0;
  double heurtime = 0.0;
};

struct SummaryRow {
  std::string label;
  long instances = 0;
  ModeSummary default_mode;
  ModeSummary scheduler_mode;
  double rel_time = 1.0;
  double rel_nodes = 1.0;
  double rel_heurtime = 1.0;
};

struct SummaryOptions {
  std::vector<double> brackets{1, 10, 30};
  double time_limit = 60.0;
  double time_shift = 1.0;
  double node_shift = 100.0;
  double heurtime_shift = 1.0;
};

std::vector<SummaryRow> summarize(const CsvTable& table, const SummaryOptions& options);
std::string format_summary(const std::vector<SummaryRow>& rows);

}  // namespace mipsched
