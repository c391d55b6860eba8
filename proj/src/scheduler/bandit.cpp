#include <algorithm>
#include <cmath>
#include <numeric>

#include "mipsched/scheduler.hpp"

namespace mipsched {

BanditState BanditState::initial(const SchedulerConfig& cfg) {
  BanditState b;
  b.weights.fill(1.0 / kNumHeuristics);
  b.epsilon = cfg.epsilon;
  b.mode = cfg.weight_mode;
  b.alpha = cfg.recency_alpha;
  return b;
}

double epsilon_at(double epsilon, int arms, long t) {
  return epsilon * std::sqrt(static_cast<double>(arms) / static_cast<double>(std::max(1L, t)));
}

long compute_skip_count(long n_fail, double beta) {
  const double e = std::exp(beta * static_cast<double>(n_fail));
  if (!(e < 1e15)) return 1'000'000'000'000'000L;
  return static_cast<long>(std::floor(e)) - 1;
}

bool should_run(SchedulerState& state) {
  if (state.skip_remaining > 0) {
    --state.skip_remaining;
    return false;
  }
  return true;
}

Selection select_heuristic(SchedulerState& state, const UniformSource& uniform,
                           const Applicability& applicable) {
  auto& queue = state.warmstart_queue;
  for (auto it = queue.begin(); it != queue.end(); ++it) {
    if (applicable(*it)) {
      const HeuristicId h = *it;
      queue.erase(it);
      ++state.bandit.t;
      return {h, true};
    }
  }
  bool any = false;
  for (const auto& s : heuristic_specs()) any = any || applicable(s.id);
  if (!any) throw NoApplicableHeuristic("no applicable heuristic");

  BanditState& b = state.bandit;
  ++b.t;
  const double eps_t = epsilon_at(b.epsilon, kNumHeuristics, b.t);
  const double rho = uniform();
  std::vector<HeuristicId> candidates;
  for (const auto& s : heuristic_specs()) candidates.push_back(s.id);

  while (true) {
    std::size_t pick = 0;
    if (rho > eps_t) {
      // candidates stay in priority order, so the first maximum wins ties
      for (std::size_t k = 1; k < candidates.size(); ++k)
        if (b.weights[index_of(candidates[k])] > b.weights[index_of(candidates[pick])]) pick = k;
    } else {
      double total = 0.0;
      for (HeuristicId h : candidates) total += b.weights[index_of(h)];
      const double u = uniform();
      if (total <= 1e-12) {
        pick = std::min(candidates.size() - 1,
                        static_cast<std::size_t>(u * static_cast<double>(candidates.size())));
      } else {
        const double target = u * total;
        double acc = 0.0;
        pick = candidates.size();
        for (std::size_t k = 0; k < candidates.size(); ++k) {
          const double w = b.weights[index_of(candidates[k])];
          acc += w;
          if (w > 0.0 && target < acc) {
            pick = k;
            break;
          }
        }
        if (pick == candidates.size()) {
          // rounding left target at the total: take the last positive weight
          for (std::size_t k = candidates.size(); k-- > 0;)
            if (b.weights[index_of(candidates[k])] > 0.0) {
              pick = k;
              break;
            }
        }
      }
    }
    const HeuristicId h = candidates[pick];
    if (applicable(h)) return {h, false};
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
  }
}

Selection select_heuristic(SchedulerState& state, Rng& rng, const Applicability& applicable) {
  return select_heuristic(state, [&rng] { return rng.uniform01(); }, applicable);
}

void update_after_call(SchedulerState& state, HeuristicId h, bool warmstart,
                       const RewardBreakdown& reward, const HeurOutcome& outcome) {
  BanditState& b = state.bandit;
  const int i = index_of(h);
  ++b.pulls[i];
  if (!b.seen[i]) {
    b.weights[i] = reward.r_total;
    b.seen[i] = true;
  } else if (b.mode == WeightMode::Average) {
    b.weights[i] += (reward.r_total - b.weights[i]) / static_cast<double>(b.pulls[i]);
  } else {
    b.weights[i] = (1.0 - b.alpha) * b.weights[i] + b.alpha * reward.r_total;
  }

  if (spec_of(h).cls == HeuristicClass::Lns) state.lns[i] = update_fixing_rate(state.lns[i], outcome);
  else state.diving[i] = update_lp_resolve_threshold(state.diving[i], outcome);

  if (outcome.found_incumbent) {
    state.n_fail = 0;
  } else if (!warmstart) {
    ++state.n_fail;
    state.skip_remaining = compute_skip_count(state.n_fail, state.reward.beta);
  }
}

}  // namespace mipsched
