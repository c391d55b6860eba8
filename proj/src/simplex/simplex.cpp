#include "mipsched/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mipsched/kernels.hpp"

namespace mipsched {

BoundState BoundState::from_model(const MipModel& model) {
  return BoundState{model.lower, model.upper, false};
}

bool BoundState::is_empty(double tol) const {
  if (empty_domain) return true;
  for (std::size_t j = 0; j < lower.size(); ++j)
    if (lower[j] > upper[j] + tol) return true;
  return false;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterLimit: return "iterlimit";
  }
  return "?";
}

namespace {

constexpr double kTieTol = 1e-12;
constexpr double kDegenerateStep = 1e-12;
// Residual above which a warm result is recomputed cold.
constexpr double kSuspectResidual = 1e-6;

void slack_bounds(RowSense sense, double rhs, double& lo, double& up) {
  switch (sense) {
    case RowSense::LessEqual: lo = -kInf; up = rhs; break;
    case RowSense::GreaterEqual: lo = rhs; up = kInf; break;
    case RowSense::Equal: lo = up = rhs; break;
  }
}

}  // namespace

LpSolver::LpSolver(const MipModel& model, std::span<const LinearRow> extra_rows,
                   LpOptions options)
    : options_(options) {
  n_ = model.num_vars();
  rows_ = model.num_rows() + static_cast<int>(extra_rows.size());
  cols_ = n_ + rows_;
  stride_ = (static_cast<std::size_t>(cols_) + 3) & ~static_cast<std::size_t>(3);

  row_entries_.reserve(rows_);
  slack_lower_.resize(rows_);
  slack_upper_.resize(rows_);
  for (int i = 0; i < model.num_rows(); ++i) {
    row_entries_.push_back(model.rows[i]);
    slack_bounds(model.row_senses[i], model.rhs[i], slack_lower_[i], slack_upper_[i]);
  }
  for (std::size_t k = 0; k < extra_rows.size(); ++k) {
    const int i = model.num_rows() + static_cast<int>(k);
    row_entries_.push_back(extra_rows[k].entries);
    slack_bounds(extra_rows[k].sense, extra_rows[k].rhs, slack_lower_[i], slack_upper_[i]);
  }

  cost_.assign(stride_, 0.0);
  std::copy(model.objective.begin(), model.objective.end(), cost_.begin());

  initial_tableau_.assign(stride_ * rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double* row = initial_tableau_.data() + static_cast<std::size_t>(i) * stride_;
    for (const auto& e : row_entries_[i]) row[e.col] = -e.value;
    row[n_ + i] = 1.0;
  }

  basis_.resize(rows_);
  status_.resize(cols_);
  lower_.resize(cols_);
  upper_.resize(cols_);
  value_.assign(cols_, 0.0);
  reduced_.assign(stride_, 0.0);
  basic_cost_.assign(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    lower_[n_ + i] = slack_lower_[i];
    upper_[n_ + i] = slack_upper_[i];
  }
  reset_basis();
}

void LpSolver::reset_basis() {
  tableau_ = initial_tableau_;
  for (int j = 0; j < n_; ++j) status_[j] = Status::AtLower;
  for (int i = 0; i < rows_; ++i) {
    basis_[i] = n_ + i;
    status_[n_ + i] = Status::Basic;
  }
  pivots_since_reset_ = 0;
}

void LpSolver::place_nonbasic(int j) {
  const double lo = lower_[j];
  const double up = upper_[j];
  Status s = status_[j];
  if (s == Status::AtLower && lo == -kInf) s = Status::Free;
  if (s == Status::AtUpper && up == kInf) s = Status::Free;
  if (s == Status::Free) {
    if (lo > -kInf) s = Status::AtLower;
    else if (up < kInf) s = Status::AtUpper;
  }
  status_[j] = s;
  value_[j] = s == Status::AtLower ? lo : s == Status::AtUpper ? up : 0.0;
}

void LpSolver::load_bounds(const BoundState& bounds) {
  if (static_cast<int>(bounds.lower.size()) != n_ || static_cast<int>(bounds.upper.size()) != n_)
    throw std::invalid_argument("bound vectors do not match the LP");
  for (int j = 0; j < n_; ++j) {
    lower_[j] = bounds.lower[j];
    upper_[j] = std::max(bounds.upper[j], bounds.lower[j]);
  }
  for (int j = 0; j < cols_; ++j)
    if (status_[j] != Status::Basic) place_nonbasic(j);
}

void LpSolver::recompute_basics() {
  for (int i = 0; i < rows_; ++i) {
    const double* row = row_ptr(i);
    double sum = 0.0;
    for (int j = 0; j < cols_; ++j)
      if (status_[j] != Status::Basic && value_[j] != 0.0) sum -= row[j] * value_[j];
    value_[basis_[i]] = sum;
  }
}

void LpSolver::pivot(int r, int j) {
  double* prow = row_ptr(r);
  const double inv = 1.0 / prow[j];
  kernels::scale(std::span<double>(prow, stride_), inv);
  prow[j] = 1.0;
  const std::span<const double> pivot_row(prow, stride_);
  for (int i = 0; i < rows_; ++i) {
    if (i == r) continue;
    double* row = row_ptr(i);
    const double factor = row[j];
    if (factor == 0.0) continue;
    kernels::sub_scaled(std::span<double>(row, stride_), pivot_row, factor);
    row[j] = 0.0;
  }
  ++pivots_since_reset_;
}

double LpSolver::max_row_violation(const std::vector<double>& x) const {
  double viol = 0.0;
  for (int j = 0; j < n_; ++j) viol = std::max({viol, lower_[j] - x[j], x[j] - upper_[j]});
  for (int i = 0; i < rows_; ++i) {
    double act = 0.0;
    for (const auto& e : row_entries_[i]) act += e.value * x[e.col];
    const double scale = 1.0 + std::abs(act);
    viol = std::max({viol, (slack_lower_[i] - act) / scale, (act - slack_upper_[i]) / scale});
  }
  return viol;
}

LpResult LpSolver::finish(LpStatus status, int iterations) {
  LpResult result;
  result.status = status;
  result.iterations = iterations;
  suspect_ = false;
  if (status == LpStatus::Infeasible) {
    result.infeasibility = last_infeasibility_;
  } else if (status == LpStatus::Optimal) {
    recompute_basics();
    result.x.assign(value_.begin(), value_.begin() + n_);
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += cost_[j] * result.x[j];
    result.objective = obj;
    suspect_ = max_row_violation(result.x) > kSuspectResidual;
  }
  return result;
}

LpResult LpSolver::iterate() {
  const double tol = options_.feas_tol;
  int iterations = 0;
  int degenerate = 0;
  bool bland = false;
  std::vector<char> rejected(cols_, 0);
  bool any_rejected = false;

  while (true) {
    bool phase_one = false;
    double infeasibility = 0.0;
    for (int i = 0; i < rows_; ++i) {
      const int b = basis_[i];
      const double v = value_[b];
      if (v < lower_[b] - tol) {
        basic_cost_[i] = -1.0;
        infeasibility += lower_[b] - v;
        phase_one = true;
      } else if (v > upper_[b] + tol) {
        basic_cost_[i] = 1.0;
        infeasibility += v - upper_[b];
        phase_one = true;
      } else {
        basic_cost_[i] = 0.0;
      }
    }
    last_infeasibility_ = infeasibility;
    if (!phase_one)
      for (int i = 0; i < rows_; ++i) basic_cost_[i] = cost_[basis_[i]];

    if (phase_one) std::fill(reduced_.begin(), reduced_.end(), 0.0);
    else std::copy(cost_.begin(), cost_.end(), reduced_.begin());
    for (int i = 0; i < rows_; ++i)
      if (basic_cost_[i] != 0.0)
        kernels::sub_scaled(reduced_, std::span<const double>(row_ptr(i), stride_), basic_cost_[i]);

    // pricing
    int enter = -1;
    int dir = 0;
    double best = 0.0;
    for (int j = 0; j < cols_; ++j) {
      const Status s = status_[j];
      if (s == Status::Basic || rejected[j] || lower_[j] == upper_[j]) continue;
      const double d = reduced_[j];
      int dj = 0;
      if (s == Status::AtLower) {
        if (d < -options_.opt_tol) dj = 1;
      } else if (s == Status::AtUpper) {
        if (d > options_.opt_tol) dj = -1;
      } else if (std::abs(d) > options_.opt_tol) {
        dj = d < 0 ? 1 : -1;
      }
      if (dj == 0) continue;
      if (bland) {
        enter = j;
        dir = dj;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        enter = j;
        dir = dj;
      }
    }
    if (enter < 0)
      return finish(phase_one ? LpStatus::Infeasible : LpStatus::Optimal, iterations);
    if (iterations >= options_.iter_limit) return finish(LpStatus::IterLimit, iterations);
    ++iterations;

    // ratio test: basic i moves by -alpha_i * step
    int leave_row = -1;
    bool leave_at_upper = false;
    double step = kInf;
    double leave_alpha = 0.0;
    for (int i = 0; i < rows_; ++i) {
      const double alpha = row_ptr(i)[enter] * dir;
      if (std::abs(alpha) <= options_.pivot_tol) continue;
      const int b = basis_[i];
      const double v = value_[b];
      const double lo = lower_[b];
      const double up = upper_[b];
      double limit = kInf;
      bool to_upper = false;
      if (alpha > 0) {  // decreasing
        if (v > up + tol) {
          limit = (v - up) / alpha;
          to_upper = true;
        } else if (v >= lo - tol && lo > -kInf) {
          limit = (v - lo) / alpha;
        }
      } else {  // increasing
        if (v < lo - tol) {
          limit = (lo - v) / -alpha;
        } else if (v <= up + tol && up < kInf) {
          limit = (up - v) / -alpha;
          to_upper = true;
        }
      }
      if (limit == kInf) continue;
      limit = std::max(limit, 0.0);
      bool take = false;
      if (leave_row < 0 || limit < step - kTieTol) {
        take = true;
      } else if (limit <= step + kTieTol) {
        take = bland ? b < basis_[leave_row] : std::abs(alpha) > std::abs(leave_alpha);
      }
      if (take) {
        leave_row = i;
        step = std::min(step, limit);
        leave_at_upper = to_upper;
        leave_alpha = alpha;
      }
    }
    const double flip = upper_[enter] - lower_[enter];
    const bool do_flip = flip < kInf && flip <= step;
    if (leave_row < 0 && !do_flip) {
      if (!phase_one) return finish(LpStatus::Unbounded, iterations);
      rejected[enter] = 1;
      any_rejected = true;
      continue;
    }
    if (do_flip) step = flip;

    if (step <= kDegenerateStep) {
      if (++degenerate > options_.bland_after) bland = true;
    } else {
      degenerate = 0;
    }

    const double delta = dir * step;
    if (delta != 0.0) {
      if (status_[enter] == Status::Free) value_[enter] = 0.0;
      value_[enter] += delta;
      for (int i = 0; i < rows_; ++i) {
        const double a = row_ptr(i)[enter];
        if (a != 0.0) value_[basis_[i]] -= a * delta;
      }
    }
    if (do_flip) {
      status_[enter] = dir > 0 ? Status::AtUpper : Status::AtLower;
      value_[enter] = dir > 0 ? upper_[enter] : lower_[enter];
    } else {
      const int leaving = basis_[leave_row];
      status_[leaving] = leave_at_upper ? Status::AtUpper : Status::AtLower;
      value_[leaving] = leave_at_upper ? upper_[leaving] : lower_[leaving];
      basis_[leave_row] = enter;
      status_[enter] = Status::Basic;
      pivot(leave_row, enter);
    }
    if (any_rejected) {
      std::fill(rejected.begin(), rejected.end(), 0);
      any_rejected = false;
    }
  }
}

LpResult LpSolver::solve(const BoundState& bounds) {
  reset_basis();
  if (bounds.is_empty()) {
    LpResult r;
    r.status = LpStatus::Infeasible;
    r.infeasibility = kInf;
    return r;
  }
  load_bounds(bounds);
  recompute_basics();
  return iterate();
}

LpResult LpSolver::resolve(const BoundState& bounds) {
  if (bounds.is_empty()) {
    LpResult r;
    r.status = LpStatus::Infeasible;
    r.infeasibility = kInf;
    return r;
  }
  if (pivots_since_reset_ > 4 * (rows_ + n_)) reset_basis();
  const int prior_pivots = pivots_since_reset_;
  load_bounds(bounds);
  recompute_basics();
  LpResult result = iterate();
  if (suspect_ && prior_pivots > 0) result = solve(bounds);
  if (options_.shadow_check) {
    LpSolver shadow(*this);
    shadow.options_.shadow_check = false;
    const LpResult cold = shadow.solve(bounds);
    const bool comparable =
        result.status != LpStatus::IterLimit && cold.status != LpStatus::IterLimit;
    if (comparable && cold.status != result.status)
      throw std::logic_error(std::string("warm/cold status mismatch: ") + to_string(result.status) +
                             " vs " + to_string(cold.status));
    if (comparable && result.status == LpStatus::Optimal &&
        std::abs(result.objective - cold.objective) >
            1e-7 * std::max(1.0, std::abs(cold.objective)))
      throw std::logic_error("warm/cold objective mismatch: " + std::to_string(result.objective) +
                             " vs " + std::to_string(cold.objective));
  }
  return result;
}

LpResult solve_lp(const MipModel& model, const BoundState& bounds, int iter_limit) {
  LpOptions opts;
  opts.iter_limit = iter_limit;
  LpSolver solver(model, {}, opts);
  return solver.solve(bounds);
}

}  // namespace mipsched
