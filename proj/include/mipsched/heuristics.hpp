#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mipsched/model.hpp"
#include "mipsched/rng.hpp"
#include "mipsched/search.hpp"
#include "mipsched/settings.hpp"
#include "mipsched/simplex.hpp"

namespace mipsched {

struct HeuristicSpec {
  HeuristicId id;
  std::string_view name;
  HeuristicClass cls;
  int default_priority;  // 0 runs first
  bool requires_incumbent;
};

/// The controlled portfolio in default order.
const std::array<HeuristicSpec, kNumHeuristics>& heuristic_specs();
const HeuristicSpec& spec_of(HeuristicId id);
std::string_view heuristic_name(HeuristicId id);
std::optional<HeuristicId> parse_heuristic(std::string_view name);
inline int index_of(HeuristicId id) { return static_cast<int>(id); }

struct LnsLimits {
  double f = 0.9;
  double f_min = 0.3;
  double f_max = 0.9;
  double gamma = 0.1;
  int node_budget = 500;

  static LnsLimits from(const LnsConfig& cfg);
};

struct DivingLimits {
  double q = 0.05;
  double q_min = 0.05;
  double q_max = 0.3;
  double eta = 0.1;
  int max_depth = 100;

  static DivingLimits from(const DivingConfig& cfg);
};

struct HeurOutcome {
  std::optional<Assignment> solution;
  bool found_incumbent = false;
  int nodes_used = 0;
  int conflicts_found = 0;
  bool sub_mip_infeasible = false;
  double wall_time_s = 0.0;
  /// LNS: size of the fixing set. Diving: LP solves.
  int fixed_count = 0;
  int lp_solves = 0;
  bool backtracked = false;
};

class NotApplicable : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// f <- max((1-gamma) f, f_min) on success or infeasible sub-MIP, else
/// f <- min((1+gamma) f, f_max).
LnsLimits update_fixing_rate(LnsLimits limits, const HeurOutcome& outcome);

/// q <- max((1-eta) q, q_min) without a new incumbent, else
/// q <- min((1+eta) q, q_max).
DivingLimits update_lp_resolve_threshold(DivingLimits limits, const HeurOutcome& outcome);

/// Per-variable counts of rows that rounding down (up) could violate.
struct Locks {
  std::vector<int> down;
  std::vector<int> up;
};

Locks compute_locks(const MipModel& model);

/// Everything a heuristic may read or write at the call site.
struct HeuristicContext {
  const MipModel& model;
  const LpResult& node_lp;
  const BoundState& node_bounds;
  const BoundState& global_bounds;
  const LpSolver& node_solver;
  const Locks& locks;
  IncumbentStore& incumbent;
  ConflictPool& pool;
  const SolverSettings& settings;
  std::chrono::steady_clock::time_point deadline;
  long node_id = -1;
};

/// Rounds every fractional integer toward its lock-free side (fewer locks;
/// nearest on ties) and returns the point if it is feasible.
std::optional<Assignment> round_by_locks(const MipModel& model, const LpResult& lp,
                                         const Locks& locks, double int_tol,
                                         double feas_tol);

HeurOutcome run_rounding(HeuristicContext& ctx);

/// Single-path dive from the node LP; `kind` must be a diving heuristic.
HeurOutcome run_diving(HeuristicId kind, HeuristicContext& ctx,
                       const DivingLimits& limits, Rng& rng);

/// k = ceil(f |I|) capped at |I|.
int lns_fixing_target(double f, int num_integers);

struct LnsNeighborhood {
  std::vector<int> fixed;  // exactly lns_fixing_target(f, |I|) variables
  BoundState bounds;
};

/// Builds the sub-MIP domain for rens, rins or mutation around the
/// reference point. Throws NotApplicable when the kind needs an incumbent.
LnsNeighborhood build_lns_neighborhood(HeuristicId kind, const MipModel& model,
                                       const BoundState& global_bounds,
                                       const LpResult& lp,
                                       const Assignment* incumbent, double f,
                                       Rng& rng, double int_tol);

/// Builds the neighborhood, solves the sub-MIP with the node budget and
/// the incumbent cutoff, and offers an improving solution.
HeurOutcome run_lns(HeuristicId kind, HeuristicContext& ctx,
                    const LnsLimits& limits, Rng& rng);

/// Dispatches on the class of `id`.
bool heuristic_applicable(HeuristicId id, bool has_incumbent);

}  // namespace mipsched
