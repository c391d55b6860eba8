#pragma once

#include <array>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mipsched/model.hpp"
#include "mipsched/settings.hpp"
#include "mipsched/simplex.hpp"

namespace mipsched {

/// Where an incumbent came from.
enum class SolutionSource { Lp, Rounding, Heuristic, SubMip };

struct IncumbentEvent {
  double objective;
  SolutionSource source;
  std::optional<HeuristicId> heuristic;
  long node;
};

/// Global incumbent and cutoff of one solve() call.
class IncumbentStore {
public:
  IncumbentStore(const MipModel& model, double int_tol, double feas_tol,
                 std::optional<double> cutoff = std::nullopt);

  /// Accepts x iff it is integral-feasible and beats the current incumbent
  /// (or the initial cutoff) by more than 1e-9. Integer entries are snapped
  /// to exact integers before the check.
  bool update(const std::vector<double>& x, SolutionSource source,
              std::optional<HeuristicId> heuristic = std::nullopt, long node = -1);

  bool has_incumbent() const { return best_.has_value(); }
  const std::optional<Assignment>& best() const { return best_; }
  /// Objective bound a new solution must beat; +inf if none.
  double cutoff() const { return cutoff_; }
  const std::vector<IncumbentEvent>& history() const { return history_; }

private:
  const MipModel* model_;
  double int_tol_;
  double feas_tol_;
  double cutoff_;
  std::optional<Assignment> best_;
  std::vector<IncumbentEvent> history_;
};

/// update_incumbent on a store.
inline bool update_incumbent(IncumbentStore& store, const Assignment& x) {
  return store.update(x.values, SolutionSource::Heuristic);
}

struct BinaryFixing {
  int var;
  bool value;
  auto operator<=>(const BinaryFixing&) const = default;
};

/// Conflicts found by heuristics and the no-good cuts derived from them.
struct ConflictPool {
  std::array<long, kNumHeuristics> count_by_heuristic{};
  std::vector<LinearRow> nogood_cuts;
  std::vector<std::vector<BinaryFixing>> nogood_fixings;
  std::set<std::vector<BinaryFixing>> seen;

  long total() const;
};

/// A proven-infeasible partial assignment: (var, value) pairs.
using Fixing = std::vector<std::pair<int, double>>;

/// Counts the conflict for h; stores a no-good cut if every fixed variable
/// is binary and `exact` (the fixing alone explains the infeasibility).
/// Empty fixings are ignored.
void add_conflict(ConflictPool& pool, const MipModel& model, HeuristicId h,
                  const Fixing& fixing, bool exact = true);

struct DomainDiff {
  Fixing fixing;
  /// False if some differing domain is narrowed but not fixed.
  bool exact = true;
};

/// Variables whose domain in `local` differs from `global`.
DomainDiff diff_domains(const BoundState& local, const BoundState& global);

}  // namespace mipsched
