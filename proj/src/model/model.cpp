#include "mipsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace mipsched {

std::vector<int> MipModel::integer_indices() const {
  std::vector<int> out;
  for (int j = 0; j < num_vars(); ++j)
    if (is_integer[j]) out.push_back(j);
  return out;
}

int MipModel::num_integers() const {
  return static_cast<int>(std::count(is_integer.begin(), is_integer.end(), true));
}

int MipModel::add_variable(double cost, double lo, double up, bool integer,
                           std::string var_name) {
  const int j = num_vars();
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(up);
  is_integer.push_back(integer);
  var_names.push_back(var_name.empty() ? "x" + std::to_string(j) : std::move(var_name));
  return j;
}

int MipModel::add_row(SparseRow entries, RowSense sense, double rhs_value,
                      std::string row_name) {
  std::map<int, double> merged;
  for (const auto& e : entries) merged[e.col] += e.value;
  SparseRow row;
  row.reserve(merged.size());
  for (const auto& [col, value] : merged)
    if (value != 0.0) row.push_back({col, value});
  const int i = num_rows();
  rows.push_back(std::move(row));
  row_senses.push_back(sense);
  rhs.push_back(rhs_value);
  row_names.push_back(row_name.empty() ? "c" + std::to_string(i) : std::move(row_name));
  return i;
}

void MipModel::validate() const {
  const auto n = objective.size();
  if (lower.size() != n || upper.size() != n || is_integer.size() != n ||
      var_names.size() != n)
    throw std::invalid_argument("column arrays disagree in length");
  const auto m = rows.size();
  if (row_senses.size() != m || rhs.size() != m || row_names.size() != m)
    throw std::invalid_argument("row arrays disagree in length");
  for (std::size_t j = 0; j < n; ++j)
    if (!(lower[j] <= upper[j]))
      throw std::invalid_argument("lower bound exceeds upper bound for " + var_names[j]);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<int> cols;
    for (const auto& e : rows[i]) {
      if (e.col < 0 || e.col >= static_cast<int>(n))
        throw std::invalid_argument("row " + row_names[i] + " references column out of range");
      if (e.value == 0.0)
        throw std::invalid_argument("row " + row_names[i] + " stores an explicit zero");
      cols.push_back(e.col);
    }
    std::sort(cols.begin(), cols.end());
    if (std::adjacent_find(cols.begin(), cols.end()) != cols.end())
      throw std::invalid_argument("row " + row_names[i] + " has duplicate columns");
  }
}

bool operator==(const MipModel& a, const MipModel& b) {
  auto rows_equal = [](const SparseRow& x, const SparseRow& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                      [](const SparseEntry& p, const SparseEntry& q) {
                        return p.col == q.col && p.value == q.value;
                      });
  };
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    if (!rows_equal(a.rows[i], b.rows[i])) return false;
  return a.name == b.name && a.objective == b.objective &&
         a.row_senses == b.row_senses && a.rhs == b.rhs && a.lower == b.lower &&
         a.upper == b.upper && a.is_integer == b.is_integer &&
         a.var_names == b.var_names && a.row_names == b.row_names &&
         a.negated_objective == b.negated_objective;
}

double dot_objective(const MipModel& model, const std::vector<double>& x) {
  double sum = 0.0;
  for (int j = 0; j < model.num_vars(); ++j) sum += model.objective[j] * x[j];
  return sum;
}

Assignment::Assignment(const MipModel& model, std::vector<double> x)
    : values(std::move(x)) {
  if (static_cast<int>(values.size()) != model.num_vars())
    throw DimensionMismatch("assignment has " + std::to_string(values.size()) +
                            " entries, model has " + std::to_string(model.num_vars()));
  objective = dot_objective(model, values);
}

double row_activity(const SparseRow& row, const std::vector<double>& x) {
  double sum = 0.0;
  for (const auto& e : row) sum += e.value * x[e.col];
  return sum;
}

double fractionality(double v) {
  return std::abs(v - std::round(v));
}

Evaluation evaluate_solution(const MipModel& model, const std::vector<double>& x,
                             double int_tol, double feas_tol) {
  if (static_cast<int>(x.size()) != model.num_vars())
    throw DimensionMismatch("assignment has " + std::to_string(x.size()) +
                            " entries, model has " + std::to_string(model.num_vars()));
  Evaluation ev;
  ev.integral = true;
  for (int j = 0; j < model.num_vars(); ++j) {
    ev.max_violation = std::max({ev.max_violation, model.lower[j] - x[j], x[j] - model.upper[j]});
    if (model.is_integer[j] && fractionality(x[j]) > int_tol) ev.integral = false;
  }
  for (int i = 0; i < model.num_rows(); ++i) {
    const double act = row_activity(model.rows[i], x);
    const double b = model.rhs[i];
    double viol = 0.0;
    switch (model.row_senses[i]) {
      case RowSense::LessEqual: viol = act - b; break;
      case RowSense::GreaterEqual: viol = b - act; break;
      case RowSense::Equal: viol = std::abs(act - b); break;
    }
    ev.max_violation = std::max(ev.max_violation, viol);
  }
  ev.feasible = ev.max_violation <= feas_tol;
  ev.objective = dot_objective(model, x);
  return ev;
}

Evaluation evaluate_solution(const MipModel& model, const Assignment& x,
                             double int_tol, double feas_tol) {
  return evaluate_solution(model, x.values, int_tol, feas_tol);
}

}  // namespace mipsched
