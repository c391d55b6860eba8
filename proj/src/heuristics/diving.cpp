#include <chrono>
#include <cmath>
#include <stdexcept>

#include "mipsched/heuristics.hpp"

namespace mipsched {

namespace {

struct DiveChoice {
  int var = -1;
  double value = 0.0;
  double alternative = 0.0;
};

DiveChoice round_to(int j, double v, bool up) {
  const double lo = std::floor(v);
  const double hi = std::ceil(v);
  return up ? DiveChoice{j, hi, lo} : DiveChoice{j, lo, hi};
}

DiveChoice choose(HeuristicId kind, const std::vector<int>& candidates,
                  const std::vector<double>& x, const Locks& locks, Rng& rng) {
  switch (kind) {
    case HeuristicId::FracDive: {
      int best = -1;
      double best_frac = kInf;
      for (int j : candidates) {
        const double f = fractionality(x[j]);
        if (f < best_frac) {
          best_frac = f;
          best = j;
        }
      }
      const double v = x[best];
      return round_to(best, v, v - std::floor(v) > 0.5);
    }
    case HeuristicId::CoefDive: {
      int best = -1;
      int best_locks = 0;
      double best_frac = kInf;
      bool best_up = false;
      for (int j : candidates) {
        const int down = locks.down[j];
        const int up = locks.up[j];
        const double v = x[j];
        bool go_up;
        if (down != up) go_up = up < down;
        else go_up = v - std::floor(v) > 0.5;
        const double frac = go_up ? std::ceil(v) - v : v - std::floor(v);
        const int score = std::min(down, up);
        if (best < 0 || score < best_locks || (score == best_locks && frac < best_frac)) {
          best = j;
          best_locks = score;
          best_frac = frac;
          best_up = go_up;
        }
      }
      return round_to(best, x[best], best_up);
    }
    case HeuristicId::RandDive: {
      const auto k = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(candidates.size()) - 1));
      const int j = candidates[k];
      return round_to(j, x[j], rng.coin());
    }
    default:
      throw std::invalid_argument("not a diving heuristic");
  }
}

}  // namespace

HeurOutcome run_diving(HeuristicId kind, HeuristicContext& ctx, const DivingLimits& limits,
                       Rng& rng) {
  if (spec_of(kind).cls != HeuristicClass::Diving)
    throw std::invalid_argument("run_diving needs a diving heuristic");
  const auto start = std::chrono::steady_clock::now();
  HeurOutcome out;
  const MipModel& model = ctx.model;
  const double int_tol = ctx.settings.int_tol;
  if (ctx.node_lp.status != LpStatus::Optimal) return out;

  const std::vector<int> ints = model.integer_indices();
  const double num_int = std::max<double>(1.0, static_cast<double>(ints.size()));
  const int checkpoint = static_cast<int>(std::ceil(1.0 / limits.q));

  LpSolver lp = ctx.node_solver;
  BoundState bounds = ctx.node_bounds;
  std::vector<double> x = ctx.node_lp.x;
  bool fresh = true;
  int since_solve = 0;
  DiveChoice last;

  auto solve_now = [&]() {
    ++out.lp_solves;
    since_solve = 0;
    return lp.resolve(bounds);
  };

  // Solves; on infeasibility flips the last fixing once.
  // Returns false when the dive must stop.
  auto reoptimize = [&]() -> bool {
    LpResult r = solve_now();
    if (r.status == LpStatus::Infeasible && last.var >= 0) {
      out.backtracked = true;
      bounds.fix(last.var, last.alternative);
      last.var = -1;
      r = solve_now();
      if (r.status == LpStatus::Infeasible) {
        const DomainDiff diff = diff_domains(bounds, ctx.global_bounds);
        if (!diff.fixing.empty()) {
          add_conflict(ctx.pool, model, kind, diff.fixing, diff.exact);
          ++out.conflicts_found;
        }
        return false;
      }
    }
    if (r.status != LpStatus::Optimal) return false;
    x = std::move(r.x);
    fresh = true;
    return r.objective < ctx.incumbent.cutoff() - 1e-9;
  };

  std::vector<int> candidates;
  while (true) {
    if (std::chrono::steady_clock::now() >= ctx.deadline) break;
    candidates.clear();
    for (int j : ints)
      if (bounds.lower[j] < bounds.upper[j] && fractionality(x[j]) > int_tol) candidates.push_back(j);

    if (candidates.empty()) {
      if (!fresh) {
        if (!reoptimize()) break;
        continue;
      }
      Assignment sol(model, x);
      const Evaluation ev = evaluate_solution(model, sol, int_tol, ctx.settings.feas_tol);
      if (ev.feasible && ev.integral) {
        out.found_incumbent =
            ctx.incumbent.update(sol.values, SolutionSource::Heuristic, kind, ctx.node_id);
        out.solution = std::move(sol);
      }
      break;
    }
    if (out.nodes_used >= limits.max_depth) break;

    last = choose(kind, candidates, x, ctx.locks, rng);
    last.value = std::clamp(last.value, bounds.lower[last.var], bounds.upper[last.var]);
    last.alternative = std::clamp(last.alternative, bounds.lower[last.var], bounds.upper[last.var]);
    bounds.fix(last.var, last.value);
    x[last.var] = last.value;
    fresh = false;
    ++out.nodes_used;
    ++since_solve;

    const bool trigger = static_cast<double>(since_solve) / num_int > limits.q ||
                         since_solve >= checkpoint;
    if (trigger && !reoptimize()) break;
  }
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace mipsched
