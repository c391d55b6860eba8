#include <algorithm>

#include "mipsched/scheduler.hpp"

namespace mipsched {

RewardConfig RewardConfig::from(const SolverSettings& settings) {
  RewardConfig cfg;
  cfg.lambda_sol = settings.scheduler.lambda_sol;
  cfg.lambda_gap = settings.scheduler.lambda_gap;
  cfg.lambda_eff = settings.scheduler.lambda_eff;
  cfg.lambda_conf = settings.scheduler.lambda_conf;
  cfg.beta = settings.scheduler.beta;
  cfg.n_max_lns = settings.lns.node_budget;
  cfg.n_max_diving = settings.diving.max_depth;
  return cfg;
}

RewardBreakdown compute_reward(const HeurOutcome& outcome, HeuristicClass cls,
                               const RewardContext& ctx, RewardConfig& cfg) {
  RewardBreakdown r;
  r.r_sol = outcome.found_incumbent ? 1.0 : 0.0;
  if (outcome.found_incumbent) {
    if (ctx.is_first_incumbent) {
      r.r_gap = 1.0;
    } else {
      const double improvement = ctx.obj_old - ctx.obj_new;
      const double span = ctx.obj_old - ctx.obj_lp;
      if (span <= 1e-9) r.r_gap = improvement > 0 ? 1.0 : 0.0;
      else r.r_gap = std::clamp(improvement / span, 0.0, 1.0);
    }
  }
  const double n_max = cfg.n_max(cls);
  r.r_eff = n_max > 0 ? std::clamp(1.0 - outcome.nodes_used / n_max, 0.0, 1.0) : 0.0;
  const double v = outcome.conflicts_found;
  r.r_conf = cfg.v_max > 0 ? std::min(1.0, v / cfg.v_max) : 0.0;
  cfg.v_max = std::max(cfg.v_max, v);
  r.r_total = cfg.lambda_sol * r.r_sol + cfg.lambda_gap * r.r_gap + cfg.lambda_eff * r.r_eff +
              cfg.lambda_conf * r.r_conf;
  return r;
}

}  // namespace mipsched
