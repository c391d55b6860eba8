#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mipsched/heuristics.hpp"
#include "mipsched/rng.hpp"
#include "mipsched/settings.hpp"

namespace mipsched {

/// Modified epsilon-greedy bandit over the heuristic portfolio.
struct BanditState {
  std::array<double, kNumHeuristics> weights{};
  std::array<long, kNumHeuristics> pulls{};
  std::array<bool, kNumHeuristics> seen{};
  long t = 0;
  double epsilon = 0.7;
  WeightMode mode = WeightMode::Average;
  double alpha = 0.05;

  static BanditState initial(const SchedulerConfig& cfg);
};

/// epsilon * sqrt(arms / t); t >= 1.
double epsilon_at(double epsilon, int arms, long t);

struct RewardBreakdown {
  double r_sol = 0.0;
  double r_gap = 0.0;
  double r_eff = 0.0;
  double r_conf = 0.0;
  double r_total = 0.0;
};

struct RewardContext {
  bool is_first_incumbent = false;
  double obj_old = 0.0;
  double obj_new = 0.0;
  double obj_lp = 0.0;
};

struct RewardConfig {
  double lambda_sol = 0.3;
  double lambda_gap = 0.3;
  double lambda_eff = 0.2;
  double lambda_conf = 0.2;
  double beta = 0.1;
  double n_max_lns = 500;
  double n_max_diving = 100;
  /// Largest conflict count of any past call.
  double v_max = 0.0;

  static RewardConfig from(const SolverSettings& settings);
  double n_max(HeuristicClass cls) const {
    return cls == HeuristicClass::Lns ? n_max_lns : n_max_diving;
  }
};

/// Computes the four reward terms; raises cfg.v_max afterwards.
RewardBreakdown compute_reward(const HeurOutcome& outcome, HeuristicClass cls,
                               const RewardContext& ctx, RewardConfig& cfg);

/// floor(exp(beta * n_fail)) - 1
long compute_skip_count(long n_fail, double beta = 0.1);

/// One executed scheduler call; enough to replay the reward formulas.
struct CallRecord {
  long t = 0;
  long node = -1;
  HeuristicId heuristic = HeuristicId::Rens;
  bool warmstart = false;
  bool found_incumbent = false;
  bool sub_mip_infeasible = false;
  int nodes_used = 0;
  int conflicts_found = 0;
  double n_max = 0.0;
  double v_max_before = 0.0;
  RewardContext context;
  RewardBreakdown reward;
  double weight_after = 0.0;
  double limit_after = 0.0;  // f for LNS, q for diving
  long n_fail_after = 0;
  long skip_after = 0;
  double wall_time_s = 0.0;
};

struct SchedulerState {
  BanditState bandit;
  std::array<LnsLimits, kNumHeuristics> lns{};
  std::array<DivingLimits, kNumHeuristics> diving{};
  long n_fail = 0;
  long skip_remaining = 0;
  std::vector<HeuristicId> warmstart_queue;
  std::vector<CallRecord> reward_log;
  RewardConfig reward;

  static SchedulerState initial(const SolverSettings& settings);
  /// Current f (LNS) or q (diving) of h.
  double limit_of(HeuristicId h) const;
};

/// Consumes one pending skip if any; returns false when skipping.
bool should_run(SchedulerState& state);

class NoApplicableHeuristic : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Selection {
  HeuristicId heuristic;
  bool warmstart;
};

using UniformSource = std::function<double()>;
using Applicability = std::function<bool(HeuristicId)>;

/// Warmstart: the first applicable heuristic left in the queue.
/// Otherwise: t <- t+1, rho ~ U[0,1]; rho > eps_t picks argmax w (lowest
/// priority on ties), else h ~ w / sum(w). Inapplicable picks are removed
/// and the rule repeated without advancing t.
Selection select_heuristic(SchedulerState& state, const UniformSource& uniform,
                           const Applicability& applicable);
Selection select_heuristic(SchedulerState& state, Rng& rng,
                           const Applicability& applicable);

/// Bandit weight, working limit, fail streak and skip window after a call.
void update_after_call(SchedulerState& state, HeuristicId h, bool warmstart,
                       const RewardBreakdown& reward, const HeurOutcome& outcome);

using Executor = std::function<HeurOutcome(HeuristicId, HeuristicContext&, const LnsLimits&,
                                           const DivingLimits&, Rng&)>;

/// The node-level loop: should_run, select, execute, reward, update.
/// While a queued warmstart heuristic is applicable the skip window is
/// not consulted.
class Scheduler {
public:
  explicit Scheduler(const SolverSettings& settings, Executor executor = {});

  /// Runs at most one heuristic. Returns the outcome if one ran.
  std::optional<HeurOutcome> run_scheduled_heuristics(HeuristicContext& ctx);

  const SchedulerState& state() const { return state_; }
  SchedulerState& state() { return state_; }
  long invocations() const { return invocations_; }
  long skipped() const { return skipped_; }

private:
  SchedulerState state_;
  Executor executor_;
  Rng bandit_rng_;
  std::array<Rng, kNumHeuristics> heuristic_rngs_;
  long invocations_ = 0;
  long skipped_ = 0;
};

/// Executes one controlled heuristic with the given limits.
HeurOutcome execute_heuristic(HeuristicId id, HeuristicContext& ctx,
                              const LnsLimits& lns, const DivingLimits& diving,
                              Rng& rng);

}  // namespace mipsched
