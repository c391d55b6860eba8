#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "mipsched/simplex.hpp"

namespace mipsched {

enum class HeuristicId : int { Rens = 0, Rins, Mutation, FracDive, CoefDive, RandDive };
inline constexpr int kNumHeuristics = 6;

enum class HeuristicClass { Lns, Diving };

/// How the controlled heuristics are driven at each node.
enum class HeuristicMode {
  Default,    // static schedule: heuristic k at depth = k*offset (mod freq)
  Scheduler,  // bandit-driven online scheduler
  Rounding,   // rounding only (used inside LNS sub-MIPs)
  None,
};

std::string_view mode_name(HeuristicMode mode);
std::optional<HeuristicMode> parse_mode(std::string_view name);

enum class WeightMode { Average, Recency };

struct SchedulerConfig {
  double epsilon = 0.7;
  double lambda_sol = 0.3;
  double lambda_gap = 0.3;
  double lambda_eff = 0.2;
  double lambda_conf = 0.2;
  double beta = 0.1;
  WeightMode weight_mode = WeightMode::Average;
  double recency_alpha = 0.05;
};

struct LnsConfig {
  double f_min = 0.3;
  double f_max = 0.9;
  double gamma = 0.1;
  double f_init = 0.9;
  int node_budget = 500;
};

struct DivingConfig {
  double q_min = 0.05;
  double q_max = 0.3;
  double eta = 0.1;
  double q_init = 0.05;
  int max_depth = 100;
};

struct DefaultScheduleConfig {
  int freq = 10;
  int offset = 1;
};

struct SolverSettings {
  long node_limit = 1'000'000;
  double time_limit_s = 60.0;
  std::uint64_t seed = 0;
  HeuristicMode mode = HeuristicMode::Scheduler;
  SchedulerConfig scheduler;
  LnsConfig lns;
  DivingConfig diving;
  DefaultScheduleConfig default_schedule;
  int plunge_depth = 8;
  double int_tol = 1e-6;
  double feas_tol = 1e-6;
  /// Only solutions with objective strictly below the cutoff are accepted.
  std::optional<double> cutoff;
  LpOptions lp;
};

}  // namespace mipsched
