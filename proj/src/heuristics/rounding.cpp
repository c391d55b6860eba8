#include <chrono>
#include <cmath>

#include "mipsched/heuristics.hpp"

namespace mipsched {

std::optional<Assignment> round_by_locks(const MipModel& model, const LpResult& lp,
                                         const Locks& locks, double int_tol,
                                         double feas_tol) {
  if (lp.status != LpStatus::Optimal) return std::nullopt;
  std::vector<double> x = lp.x;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (!model.is_integer[j]) continue;
    const double v = x[j];
    if (fractionality(v) <= int_tol) {
      x[j] = std::round(v);
      continue;
    }
    const int down = locks.down[j];
    const int up = locks.up[j];
    if (down < up) x[j] = std::floor(v);
    else if (up < down) x[j] = std::ceil(v);
    else x[j] = (v - std::floor(v) <= 0.5) ? std::floor(v) : std::ceil(v);
  }
  const Evaluation ev = evaluate_solution(model, x, int_tol, feas_tol);
  if (!ev.feasible || !ev.integral) return std::nullopt;
  return Assignment(model, std::move(x));
}

HeurOutcome run_rounding(HeuristicContext& ctx) {
  const auto start = std::chrono::steady_clock::now();
  HeurOutcome out;
  out.solution = round_by_locks(ctx.model, ctx.node_lp, ctx.locks, ctx.settings.int_tol,
                                ctx.settings.feas_tol);
  if (out.solution)
    out.found_incumbent =
        ctx.incumbent.update(out.solution->values, SolutionSource::Rounding, std::nullopt, ctx.node_id);
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace mipsched
