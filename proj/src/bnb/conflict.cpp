#include <algorithm>
#include <cmath>
#include <numeric>

#include "mipsched/search.hpp"

namespace mipsched {

IncumbentStore::IncumbentStore(const MipModel& model, double int_tol, double feas_tol,
                               std::optional<double> cutoff)
    : model_(&model), int_tol_(int_tol), feas_tol_(feas_tol), cutoff_(cutoff.value_or(kInf)) {}

bool IncumbentStore::update(const std::vector<double>& x, SolutionSource source,
                            std::optional<HeuristicId> heuristic, long node) {
  if (static_cast<int>(x.size()) != model_->num_vars()) return false;
  std::vector<double> snapped = x;
  for (int j = 0; j < model_->num_vars(); ++j)
    if (model_->is_integer[j] && fractionality(snapped[j]) <= int_tol_)
      snapped[j] = std::round(snapped[j]);
  const Evaluation ev = evaluate_solution(*model_, snapped, int_tol_, feas_tol_);
  if (!ev.feasible || !ev.integral) return false;
  if (!(ev.objective < cutoff_ - 1e-9)) return false;
  best_ = Assignment(*model_, std::move(snapped));
  cutoff_ = best_->objective;
  history_.push_back({best_->objective, source, heuristic, node});
  return true;
}

long ConflictPool::total() const {
  return std::accumulate(count_by_heuristic.begin(), count_by_heuristic.end(), 0L);
}

void add_conflict(ConflictPool& pool, const MipModel& model, HeuristicId h,
                  const Fixing& fixing, bool exact) {
  if (fixing.empty()) return;
  ++pool.count_by_heuristic[static_cast<int>(h)];
  if (!exact) return;
  std::vector<BinaryFixing> key;
  key.reserve(fixing.size());
  for (const auto& [var, value] : fixing) {
    if (!model.is_binary(var) || (value != 0.0 && value != 1.0)) return;
    key.push_back({var, value == 1.0});
  }
  std::sort(key.begin(), key.end());
  if (!pool.seen.insert(key).second) return;
  // sum_{x_j = 0} x_j - sum_{x_j = 1} x_j >= 1 - |ones|
  LinearRow cut;
  cut.sense = RowSense::GreaterEqual;
  double ones = 0.0;
  for (const auto& f : key) {
    cut.entries.push_back({f.var, f.value ? -1.0 : 1.0});
    if (f.value) ones += 1.0;
  }
  cut.rhs = 1.0 - ones;
  pool.nogood_cuts.push_back(std::move(cut));
  pool.nogood_fixings.push_back(std::move(key));
}

DomainDiff diff_domains(const BoundState& local, const BoundState& global) {
  DomainDiff diff;
  for (std::size_t j = 0; j < local.lower.size(); ++j) {
    if (local.lower[j] == global.lower[j] && local.upper[j] == global.upper[j]) continue;
    if (local.lower[j] == local.upper[j]) diff.fixing.push_back({static_cast<int>(j), local.lower[j]});
    else diff.exact = false;
  }
  return diff;
}

}  // namespace mipsched
