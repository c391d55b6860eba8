#pragma once

#include <span>
#include <vector>

#include "mipsched/model.hpp"

namespace mipsched {

/// Node- or dive-local variable bounds that override the model's.
struct BoundState {
  std::vector<double> lower;
  std::vector<double> upper;
  /// Set when a caller already knows some domain is empty.
  bool empty_domain = false;

  static BoundState from_model(const MipModel& model);
  /// True if marked empty or some lower exceeds its upper by more than tol.
  bool is_empty(double tol = 1e-9) const;
  void fix(int j, double value) { lower[j] = upper[j] = value; }
};

/// An extra row appended to the LP (used for no-good cuts).
struct LinearRow {
  SparseRow entries;
  RowSense sense = RowSense::GreaterEqual;
  double rhs = 0.0;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::IterLimit;
  std::vector<double> x;   // structural values, valid iff Optimal
  double objective = 0.0;  // c'x, valid iff Optimal
  int iterations = 0;
  /// Phase-one residual (sum of bound violations) when Infeasible.
  double infeasibility = 0.0;
};

struct LpOptions {
  int iter_limit = 20000;
  double feas_tol = 1e-7;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-9;
  /// Consecutive degenerate pivots tolerated before switching to Bland.
  int bland_after = 50;
  /// Cold-solve every warm re-solve and throw std::logic_error if the
  /// status or objective disagrees.
  bool shadow_check = false;
};

/// Bounded-variable primal simplex on a dense tableau.
///
/// Rows are a_i x - s_i = 0 with the row sense carried by the bounds of
/// slack s_i, so the right-hand side of the tableau stays zero. Phase one minimizes the sum of basic bound violations from
/// whatever basis is current, so a warm re-solve is just a solve from the
/// previous basis. The context keeps its basis between calls and is not
/// thread-safe; distinct contexts over one model are independent.
class LpSolver {
public:
  LpSolver(const MipModel& model, std::span<const LinearRow> extra_rows = {},
           LpOptions options = {});

  /// Solves from the all-slack basis.
  LpResult solve(const BoundState& bounds);
  /// Solves from the basis left by the previous call.
  LpResult resolve(const BoundState& bounds);

  int num_rows() const { return rows_; }
  int num_structurals() const { return n_; }
  const LpOptions& options() const { return options_; }
  LpOptions& options() { return options_; }

private:
  enum class Status : unsigned char { Basic, AtLower, AtUpper, Free };

  void reset_basis();
  void load_bounds(const BoundState& bounds);
  void place_nonbasic(int j);
  void recompute_basics();
  LpResult iterate();
  LpResult finish(LpStatus status, int iterations);
  double max_row_violation(const std::vector<double>& x) const;
  void pivot(int row, int col);
  double* row_ptr(int i) { return tableau_.data() + static_cast<std::size_t>(i) * stride_; }
  const double* row_ptr(int i) const {
    return tableau_.data() + static_cast<std::size_t>(i) * stride_;
  }

  LpOptions options_;
  int n_ = 0;     // structurals
  int rows_ = 0;  // rows, also number of slacks
  int cols_ = 0;  // n_ + rows_
  std::size_t stride_ = 0;

  std::vector<SparseRow> row_entries_;
  std::vector<double> cost_;
  std::vector<double> slack_lower_;
  std::vector<double> slack_upper_;

  std::vector<double> initial_tableau_;
  std::vector<double> tableau_;
  std::vector<int> basis_;     // variable basic in row i
  std::vector<Status> status_;
  std::vector<double> lower_;  // current bounds of all columns
  std::vector<double> upper_;
  std::vector<double> value_;

  std::vector<double> reduced_;
  std::vector<double> basic_cost_;
  int pivots_since_reset_ = 0;
  double last_infeasibility_ = 0.0;
  bool suspect_ = false;
};

/// One-shot cold solve.
LpResult solve_lp(const MipModel& model, const BoundState& bounds,
                  int iter_limit = 20000);

}  // namespace mipsched
