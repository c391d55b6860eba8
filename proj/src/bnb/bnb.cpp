#include "mipsched/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>

#include "mipsched/heuristics.hpp"

namespace mipsched {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::NodeLimit: return "nodelimit";
    case SolveStatus::TimeLimit: return "timelimit";
  }
  return "?";
}

int select_branch_variable(const LpResult& lp, const MipModel& model, double int_tol) {
  int best = -1;
  double best_frac = 0.0;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (!model.is_integer[j]) continue;
    const double v = lp.x[j];
    const double f = std::min(v - std::floor(v), std::ceil(v) - v);
    if (f <= int_tol) continue;
    // 1 - 0.7 and 0.3 differ in the last bit; treat them as a tie
    if (best < 0 || f > best_frac + 1e-12) {
      best_frac = f;
      best = j;
    }
  }
  if (best < 0) throw NoFractionalVariable("LP solution is integral");
  return best;
}

MipModel with_rows(const MipModel& model, const std::vector<LinearRow>& rows) {
  MipModel out = model;
  for (const auto& r : rows) out.add_row(r.entries, r.sense, r.rhs);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

bool lp_integral(const LpResult& lp, const MipModel& model, double int_tol) {
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.is_integer[j] && fractionality(lp.x[j]) > int_tol) return false;
  return true;
}

// Nodes whose bound cannot beat the cutoff by the acceptance margin.
bool prunable(double bound, double cutoff) {
  return cutoff < kInf && bound >= cutoff - 1e-9;
}

struct OpenKey {
  double bound;
  long id;
  bool operator<(const OpenKey& o) const {
    return bound < o.bound || (bound == o.bound && id < o.id);
  }
};

class Search {
public:
  Search(const MipModel& model, const BoundState& root_bounds, const SolverSettings& settings)
      : model_(model),
        settings_(settings),
        global_(BoundState::from_model(model)),
        root_bounds_(root_bounds),
        incumbent_(model, settings.int_tol, settings.feas_tol, settings.cutoff),
        locks_(compute_locks(model)),
        start_(Clock::now()),
        deadline_(start_ + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(std::max(0.0, settings.time_limit_s)))) {
    if (settings.mode == HeuristicMode::Scheduler) scheduler_ = std::make_unique<Scheduler>(settings);
    for (int k = 0; k < kNumHeuristics; ++k)
      static_rngs_[k] = Rng(derive_seed(settings.seed, 200 + static_cast<std::uint64_t>(k)));
    rebuild_lp();
  }

  SolveResult run() {
    SolveResult result;
    push(Node{next_id_++, 0, root_bounds_, -kInf});
    std::optional<Node> plunge;
    int plunge_len = 0;
    bool hit_nodes = false;
    bool hit_time = false;
    bool unbounded = false;
    bool dropped = false;

    while (true) {
      Node node;
      if (plunge) {
        node = std::move(*plunge);
        plunge.reset();
      } else {
        if (open_.empty()) break;
        auto it = open_.begin();
        node = std::move(it->second);
        open_.erase(it);
        plunge_len = 0;
      }
      if (prunable(node.parent_dualbound, incumbent_.cutoff())) continue;
      if (nodes_ >= settings_.node_limit) {
        push(std::move(node));
        hit_nodes = true;
        break;
      }
      if (Clock::now() >= deadline_) {
        push(std::move(node));
        hit_time = true;
        break;
      }

      if (lp_cuts_ != pool_.nogood_cuts.size()) rebuild_lp();
      LpResult lp = lp_->resolve(node.bounds);
      if (lp.status == LpStatus::IterLimit) {
        LpOptions retry = settings_.lp;
        retry.iter_limit *= 4;
        retry.shadow_check = false;
        LpSolver cold(model_, pool_.nogood_cuts, retry);
        lp = cold.solve(node.bounds);
      }
      ++nodes_;
      stats_.lp_iterations += lp.iterations;
      if (lp.status == LpStatus::IterLimit) {
        dropped = true;
        continue;
      }
      if (lp.status == LpStatus::Infeasible) continue;
      if (lp.status == LpStatus::Unbounded) {
        unbounded = true;
        break;
      }
      const double bound = std::max(lp.objective, node.parent_dualbound);
      if (prunable(bound, incumbent_.cutoff())) continue;
      track_gap(bound);

      if (lp_integral(lp, model_, settings_.int_tol)) {
        incumbent_.update(lp.x, SolutionSource::Lp, std::nullopt, node.id);
        continue;
      }

      run_heuristics(node, lp);
      if (prunable(bound, incumbent_.cutoff())) continue;

      const int j = select_branch_variable(lp, model_, settings_.int_tol);
      const double v = lp.x[j];
      Node down{next_id_++, node.depth + 1, node.bounds, bound};
      down.bounds.upper[j] = std::floor(v);
      Node up{next_id_++, node.depth + 1, std::move(node.bounds), bound};
      up.bounds.lower[j] = std::ceil(v);
      const bool prefer_up = v - std::floor(v) > 0.5;
      Node& first = prefer_up ? up : down;
      Node& second = prefer_up ? down : up;
      if (plunge_len < settings_.plunge_depth) {
        ++plunge_len;
        push(std::move(second));
        plunge = std::move(first);
      } else {
        push(std::move(first));
        push(std::move(second));
      }
    }
    if (plunge) push(std::move(*plunge));

    if (unbounded) result.status = SolveStatus::Unbounded;
    else if (hit_time) result.status = SolveStatus::TimeLimit;
    else if (hit_nodes || dropped) result.status = SolveStatus::NodeLimit;
    else result.status = incumbent_.has_incumbent() ? SolveStatus::Optimal : SolveStatus::Infeasible;

    if (result.status == SolveStatus::Optimal) {
      result.dual_bound = incumbent_.best()->objective;
    } else if (!open_.empty()) {
      double lb = open_.begin()->first.bound;
      result.dual_bound = std::min(lb, incumbent_.cutoff());
    } else {
      result.dual_bound = incumbent_.cutoff();
    }

    result.incumbent = incumbent_.best();
    result.nodes_processed = nodes_;
    result.incumbent_history = incumbent_.history();
    result.nogood_cuts = pool_.nogood_cuts;
    result.min_bound_gap = min_gap_;
    stats_.nodes = nodes_;
    stats_.conflicts = pool_.total();
    stats_.nogood_cuts = static_cast<long>(pool_.nogood_cuts.size());
    if (scheduler_) {
      const auto& st = scheduler_->state();
      result.call_log = st.reward_log;
      stats_.scheduler_invocations = scheduler_->invocations();
      stats_.scheduler_skips = scheduler_->skipped();
      for (const auto& spec : heuristic_specs()) {
        auto& ps = stats_.per_heuristic[index_of(spec.id)];
        ps.pulls = st.bandit.pulls[index_of(spec.id)];
        ps.final_limit = st.limit_of(spec.id);
      }
      for (const auto& rec : st.reward_log) stats_.per_heuristic[index_of(rec.heuristic)].reward_sum += rec.reward.r_total;
    } else {
      for (const auto& spec : heuristic_specs())
        stats_.per_heuristic[index_of(spec.id)].final_limit =
            spec.cls == HeuristicClass::Lns ? LnsLimits::from(settings_.lns).f
                                            : DivingLimits::from(settings_.diving).q;
    }
    stats_.time_s = seconds_since(start_);
    result.stats = stats_;
    return result;
  }

private:
  void push(Node node) {
    const OpenKey key{node.parent_dualbound, node.id};
    open_.emplace(key, std::move(node));
  }

  void rebuild_lp() {
    lp_ = std::make_unique<LpSolver>(model_, pool_.nogood_cuts, settings_.lp);
    lp_cuts_ = pool_.nogood_cuts.size();
  }

  void track_gap(double node_bound) {
    if (!incumbent_.has_incumbent()) return;
    double lb = node_bound;
    if (!open_.empty()) lb = std::min(lb, open_.begin()->first.bound);
    min_gap_ = std::min(min_gap_, incumbent_.cutoff() - lb);
  }

  void record(HeuristicId id, const HeurOutcome& out) {
    auto& ps = stats_.per_heuristic[index_of(id)];
    ++ps.calls;
    ps.time_s += out.wall_time_s;
    ++stats_.heuristic_calls;
    stats_.heurtime_s += out.wall_time_s;
    if (out.found_incumbent) {
      ++ps.successes;
      ++stats_.heuristic_successes;
      ++stats_.incumbents_found_by_heuristics;
    }
  }

  void run_heuristics(const Node& node, const LpResult& lp) {
    if (settings_.mode == HeuristicMode::None) return;
    HeuristicContext ctx{model_, lp, node.bounds, global_, *lp_, locks_, incumbent_,
                         pool_, settings_, deadline_, node.id};
    const HeurOutcome rounded = run_rounding(ctx);
    if (rounded.found_incumbent) ++stats_.incumbents_found_by_rounding;

    if (settings_.mode == HeuristicMode::Scheduler) {
      if (auto out = scheduler_->run_scheduled_heuristics(ctx))
        record(scheduler_->state().reward_log.back().heuristic, *out);
    } else if (settings_.mode == HeuristicMode::Default) {
      const int freq = std::max(1, settings_.default_schedule.freq);
      const LnsLimits lns = LnsLimits::from(settings_.lns);
      const DivingLimits dive = DivingLimits::from(settings_.diving);
      for (const auto& spec : heuristic_specs()) {
        const int k = spec.default_priority;
        if (node.depth % freq != (k * settings_.default_schedule.offset) % freq) continue;
        if (!heuristic_applicable(spec.id, incumbent_.has_incumbent())) continue;
        if (Clock::now() >= deadline_) break;
        const HeurOutcome out = execute_heuristic(spec.id, ctx, lns, dive, static_rngs_[k]);
        record(spec.id, out);
      }
    }
  }

  const MipModel& model_;
  const SolverSettings& settings_;
  BoundState global_;
  BoundState root_bounds_;
  IncumbentStore incumbent_;
  ConflictPool pool_;
  Locks locks_;
  std::unique_ptr<LpSolver> lp_;
  std::size_t lp_cuts_ = 0;
  std::unique_ptr<Scheduler> scheduler_;
  std::array<Rng, kNumHeuristics> static_rngs_;
  std::map<OpenKey, Node> open_;
  long next_id_ = 0;
  long nodes_ = 0;
  SolveStats stats_;
  double min_gap_ = kInf;
  Clock::time_point start_;
  Clock::time_point deadline_;
};

}  // namespace

SolveResult solve(const MipModel& model, const BoundState& bounds, const SolverSettings& settings) {
  Search search(model, bounds, settings);
  return search.run();
}

SolveResult solve(const MipModel& model, const SolverSettings& settings) {
  return solve(model, BoundState::from_model(model), settings);
}

}  // namespace mipsched
