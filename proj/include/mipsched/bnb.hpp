#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mipsched/model.hpp"
#include "mipsched/scheduler.hpp"
#include "mipsched/search.hpp"
#include "mipsched/settings.hpp"
#include "mipsched/simplex.hpp"

namespace mipsched {

struct Node {
  long id = 0;
  int depth = 0;
  BoundState bounds;
  double parent_dualbound = -kInf;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NodeLimit, TimeLimit };

const char* to_string(SolveStatus status);

struct HeuristicStats {
  long calls = 0;
  long successes = 0;
  long pulls = 0;  // scheduler selections
  double reward_sum = 0.0;
  double final_limit = 0.0;
  double time_s = 0.0;
};

struct SolveStats {
  long nodes = 0;
  double time_s = 0.0;
  long lp_iterations = 0;
  long incumbents_found_by_heuristics = 0;  // controlled heuristics only
  long incumbents_found_by_rounding = 0;
  long heuristic_calls = 0;
  long heuristic_successes = 0;
  double heurtime_s = 0.0;
  long scheduler_invocations = 0;
  long scheduler_skips = 0;
  long conflicts = 0;
  long nogood_cuts = 0;
  std::array<HeuristicStats, kNumHeuristics> per_heuristic{};
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Assignment> incumbent;
  double dual_bound = -kInf;
  long nodes_processed = 0;
  SolveStats stats;
  /// Scheduler calls in execution order (empty in default mode).
  std::vector<CallRecord> call_log;
  std::vector<IncumbentEvent> incumbent_history;
  /// Cuts accumulated over the run.
  std::vector<LinearRow> nogood_cuts;
  /// Smallest (incumbent - dual bound) seen at any node; >= -1e-6.
  double min_bound_gap = kInf;
};

class NoFractionalVariable : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// The most fractional integer variable; lowest index on ties.
int select_branch_variable(const LpResult& lp, const MipModel& model,
                           double int_tol = kDefaultIntTol);

/// LP-based branch and bound: best-bound selection with depth-first
/// plunging, lock rounding at every node, then the heuristic layer.
SolveResult solve(const MipModel& model, const SolverSettings& settings);

/// Same as solve() restricted to `bounds` (used for LNS sub-MIPs).
SolveResult solve(const MipModel& model, const BoundState& bounds,
                  const SolverSettings& settings);

/// Model with the cuts appended as rows.
MipModel with_rows(const MipModel& model, const std::vector<LinearRow>& rows);

}  // namespace mipsched
