#include <algorithm>
#include <stdexcept>

#include "mipsched/heuristics.hpp"

namespace mipsched {

const std::array<HeuristicSpec, kNumHeuristics>& heuristic_specs() {
  static const std::array<HeuristicSpec, kNumHeuristics> specs{{
      {HeuristicId::Rens, "rens", HeuristicClass::Lns, 0, false},
      {HeuristicId::Rins, "rins", HeuristicClass::Lns, 1, true},
      {HeuristicId::Mutation, "mutation", HeuristicClass::Lns, 2, true},
      {HeuristicId::FracDive, "frac_dive", HeuristicClass::Diving, 3, false},
      {HeuristicId::CoefDive, "coef_dive", HeuristicClass::Diving, 4, false},
      {HeuristicId::RandDive, "rand_dive", HeuristicClass::Diving, 5, false},
  }};
  return specs;
}

const HeuristicSpec& spec_of(HeuristicId id) {
  return heuristic_specs()[static_cast<std::size_t>(id)];
}

std::string_view heuristic_name(HeuristicId id) { return spec_of(id).name; }

std::optional<HeuristicId> parse_heuristic(std::string_view name) {
  for (const auto& s : heuristic_specs())
    if (s.name == name) return s.id;
  return std::nullopt;
}

bool heuristic_applicable(HeuristicId id, bool has_incumbent) {
  return has_incumbent || !spec_of(id).requires_incumbent;
}

std::string_view mode_name(HeuristicMode mode) {
  switch (mode) {
    case HeuristicMode::Default: return "default";
    case HeuristicMode::Scheduler: return "scheduler";
    case HeuristicMode::Rounding: return "rounding";
    case HeuristicMode::None: return "none";
  }
  return "?";
}

std::optional<HeuristicMode> parse_mode(std::string_view name) {
  for (auto m : {HeuristicMode::Default, HeuristicMode::Scheduler, HeuristicMode::Rounding,
                 HeuristicMode::None})
    if (mode_name(m) == name) return m;
  return std::nullopt;
}

LnsLimits LnsLimits::from(const LnsConfig& cfg) {
  return {std::clamp(cfg.f_init, cfg.f_min, cfg.f_max), cfg.f_min, cfg.f_max, cfg.gamma,
          cfg.node_budget};
}

DivingLimits DivingLimits::from(const DivingConfig& cfg) {
  return {std::clamp(cfg.q_init, cfg.q_min, cfg.q_max), cfg.q_min, cfg.q_max, cfg.eta,
          cfg.max_depth};
}

LnsLimits update_fixing_rate(LnsLimits limits, const HeurOutcome& outcome) {
  if (outcome.found_incumbent || outcome.sub_mip_infeasible)
    limits.f = std::max((1.0 - limits.gamma) * limits.f, limits.f_min);
  else
    limits.f = std::min((1.0 + limits.gamma) * limits.f, limits.f_max);
  return limits;
}

DivingLimits update_lp_resolve_threshold(DivingLimits limits, const HeurOutcome& outcome) {
  if (!outcome.found_incumbent)
    limits.q = std::max((1.0 - limits.eta) * limits.q, limits.q_min);
  else
    limits.q = std::min((1.0 + limits.eta) * limits.q, limits.q_max);
  return limits;
}

}  // namespace mipsched
