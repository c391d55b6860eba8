#include <algorithm>
#include <stdexcept>

#include "mipsched/scheduler.hpp"

namespace mipsched {

SchedulerState SchedulerState::initial(const SolverSettings& settings) {
  SchedulerState s;
  s.bandit = BanditState::initial(settings.scheduler);
  s.lns.fill(LnsLimits::from(settings.lns));
  s.diving.fill(DivingLimits::from(settings.diving));
  for (const auto& spec : heuristic_specs()) s.warmstart_queue.push_back(spec.id);
  s.reward = RewardConfig::from(settings);
  return s;
}

double SchedulerState::limit_of(HeuristicId h) const {
  const int i = index_of(h);
  return spec_of(h).cls == HeuristicClass::Lns ? lns[i].f : diving[i].q;
}

HeurOutcome execute_heuristic(HeuristicId id, HeuristicContext& ctx, const LnsLimits& lns,
                              const DivingLimits& diving, Rng& rng) {
  if (spec_of(id).cls == HeuristicClass::Lns) return run_lns(id, ctx, lns, rng);
  return run_diving(id, ctx, diving, rng);
}

Scheduler::Scheduler(const SolverSettings& settings, Executor executor)
    : state_(SchedulerState::initial(settings)),
      executor_(executor ? std::move(executor) : Executor(&execute_heuristic)),
      bandit_rng_(derive_seed(settings.seed, 100)) {
  for (int k = 0; k < kNumHeuristics; ++k)
    heuristic_rngs_[k] = Rng(derive_seed(settings.seed, 200 + static_cast<std::uint64_t>(k)));
}

std::optional<HeurOutcome> Scheduler::run_scheduled_heuristics(HeuristicContext& ctx) {
  ++invocations_;
  const bool had_incumbent = ctx.incumbent.has_incumbent();
  const auto applicable = [had_incumbent](HeuristicId h) {
    return heuristic_applicable(h, had_incumbent);
  };
  const auto& queue = state_.warmstart_queue;
  const bool warmstart_pending = std::any_of(queue.begin(), queue.end(), applicable);
  if (!warmstart_pending && !should_run(state_)) {
    ++skipped_;
    return std::nullopt;
  }
  Selection sel;
  try {
    sel = select_heuristic(state_, bandit_rng_, applicable);
  } catch (const NoApplicableHeuristic&) {
    return std::nullopt;
  }
  const HeuristicId h = sel.heuristic;
  const int i = index_of(h);
  const double obj_old = had_incumbent ? ctx.incumbent.cutoff() : 0.0;

  HeurOutcome outcome = executor_(h, ctx, state_.lns[i], state_.diving[i], heuristic_rngs_[i]);

  RewardContext rc;
  rc.is_first_incumbent = outcome.found_incumbent && !had_incumbent;
  rc.obj_old = obj_old;
  rc.obj_new = outcome.found_incumbent ? ctx.incumbent.cutoff() : obj_old;
  rc.obj_lp = ctx.node_lp.objective;

  const double v_max_before = state_.reward.v_max;
  const RewardBreakdown reward = compute_reward(outcome, spec_of(h).cls, rc, state_.reward);
  update_after_call(state_, h, sel.warmstart, reward, outcome);

  CallRecord rec;
  rec.t = state_.bandit.t;
  rec.node = ctx.node_id;
  rec.heuristic = h;
  rec.warmstart = sel.warmstart;
  rec.found_incumbent = outcome.found_incumbent;
  rec.sub_mip_infeasible = outcome.sub_mip_infeasible;
  rec.nodes_used = outcome.nodes_used;
  rec.conflicts_found = outcome.conflicts_found;
  rec.n_max = state_.reward.n_max(spec_of(h).cls);
  rec.v_max_before = v_max_before;
  rec.context = rc;
  rec.reward = reward;
  rec.weight_after = state_.bandit.weights[i];
  rec.limit_after = state_.limit_of(h);
  rec.n_fail_after = state_.n_fail;
  rec.skip_after = state_.skip_remaining;
  rec.wall_time_s = outcome.wall_time_s;
  state_.reward_log.push_back(rec);
  return outcome;
}

}  // namespace mipsched
