#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mipsched/bnb.hpp"
#include "mipsched/heuristics.hpp"

namespace mipsched {

int lns_fixing_target(double f, int num_integers) {
  const double raw = std::ceil(f * num_integers - 1e-9);
  return std::clamp(static_cast<int>(raw), 0, num_integers);
}

namespace {

// Integer indices ordered by LP fractionality, then index.
std::vector<int> by_fractionality(std::vector<int> vars, const std::vector<double>& x) {
  std::stable_sort(vars.begin(), vars.end(), [&](int a, int b) {
    return fractionality(x[a]) < fractionality(x[b]);
  });
  return vars;
}

double clamp_to(const BoundState& b, int j, double v) {
  return std::clamp(v, b.lower[j], b.upper[j]);
}

}  // namespace

LnsNeighborhood build_lns_neighborhood(HeuristicId kind, const MipModel& model,
                                       const BoundState& global_bounds, const LpResult& lp,
                                       const Assignment* incumbent, double f, Rng& rng,
                                       double int_tol) {
  if (spec_of(kind).cls != HeuristicClass::Lns)
    throw std::invalid_argument("not an LNS heuristic");
  if (spec_of(kind).requires_incumbent && incumbent == nullptr)
    throw NotApplicable(std::string(heuristic_name(kind)) + " needs an incumbent");
  if (lp.status != LpStatus::Optimal) throw std::invalid_argument("LNS needs an optimal LP");

  const std::vector<int> ints = model.integer_indices();
  const int k = lns_fixing_target(f, static_cast<int>(ints.size()));
  LnsNeighborhood nb;
  nb.bounds = global_bounds;
  const std::vector<double>& x = lp.x;

  switch (kind) {
    case HeuristicId::Rins: {
      const auto& inc = incumbent->values;
      std::vector<int> agree;
      std::vector<int> rest;
      for (int j : ints) (std::abs(x[j] - inc[j]) <= int_tol ? agree : rest).push_back(j);
      std::vector<int> order = by_fractionality(agree, x);
      for (int j : by_fractionality(rest, x)) order.push_back(j);
      order.resize(k);
      for (int j : order) nb.bounds.fix(j, clamp_to(global_bounds, j, std::round(inc[j])));
      nb.fixed = std::move(order);
      break;
    }
    case HeuristicId::Rens: {
      std::vector<int> order = by_fractionality(ints, x);
      std::vector<char> chosen(model.num_vars(), 0);
      for (int t = 0; t < k; ++t) {
        const int j = order[t];
        chosen[j] = 1;
        nb.bounds.fix(j, clamp_to(global_bounds, j, std::round(x[j])));
      }
      for (int j : ints) {
        if (chosen[j]) continue;
        double lo = std::floor(x[j]);
        double up = lo + 1.0;
        if (up > global_bounds.upper[j]) {
          up = global_bounds.upper[j];
          lo = up - 1.0;
        }
        nb.bounds.lower[j] = std::max(global_bounds.lower[j], lo);
        nb.bounds.upper[j] = std::min(global_bounds.upper[j], up);
      }
      order.resize(k);
      nb.fixed = std::move(order);
      break;
    }
    case HeuristicId::Mutation: {
      std::vector<int> pool = ints;
      for (int t = 0; t < k; ++t) {
        const auto pick = static_cast<std::size_t>(
            rng.uniform_int(t, static_cast<std::int64_t>(pool.size()) - 1));
        std::swap(pool[t], pool[pick]);
      }
      pool.resize(k);
      for (int j : pool)
        nb.bounds.fix(j, clamp_to(global_bounds, j, std::round(incumbent->values[j])));
      nb.fixed = std::move(pool);
      break;
    }
    default:
      break;
  }
  std::sort(nb.fixed.begin(), nb.fixed.end());
  return nb;
}

HeurOutcome run_lns(HeuristicId kind, HeuristicContext& ctx, const LnsLimits& limits,
                    Rng& rng) {
  const auto start = std::chrono::steady_clock::now();
  const auto& best = ctx.incumbent.best();
  LnsNeighborhood nb =
      build_lns_neighborhood(kind, ctx.model, ctx.global_bounds, ctx.node_lp,
                             best ? &*best : nullptr, limits.f, rng, ctx.settings.int_tol);
  HeurOutcome out;
  out.fixed_count = static_cast<int>(nb.fixed.size());

  SolverSettings sub = ctx.settings;
  sub.mode = HeuristicMode::Rounding;
  sub.node_limit = limits.node_budget;
  sub.seed = derive_seed(ctx.settings.seed, 1000 + static_cast<std::uint64_t>(kind));
  const bool with_cutoff = ctx.incumbent.has_incumbent() || ctx.settings.cutoff.has_value();
  sub.cutoff = with_cutoff ? std::optional<double>(ctx.incumbent.cutoff()) : std::nullopt;
  const double remaining = std::chrono::duration<double>(ctx.deadline - start).count();
  sub.time_limit_s = std::max(0.0, remaining);

  const SolveResult res = solve(ctx.model, nb.bounds, sub);
  out.nodes_used = static_cast<int>(std::min<long>(res.nodes_processed, limits.node_budget));
  out.sub_mip_infeasible = res.status == SolveStatus::Infeasible;
  if (res.incumbent) {
    out.found_incumbent =
        ctx.incumbent.update(res.incumbent->values, SolutionSource::SubMip, kind, ctx.node_id);
    out.solution = res.incumbent;
  }
  // Without a cutoff an infeasible sub-MIP refutes its whole domain.
  if (out.sub_mip_infeasible && !with_cutoff) {
    const DomainDiff diff = diff_domains(nb.bounds, ctx.global_bounds);
    if (!diff.fixing.empty()) {
      add_conflict(ctx.pool, ctx.model, kind, diff.fixing, diff.exact);
      ++out.conflicts_found;
    }
  }
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace mipsched
