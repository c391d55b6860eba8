#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mipsched {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct SparseEntry {
  int col;
  double value;
};

using SparseRow = std::vector<SparseEntry>;

/// A mixed-integer program in minimize form:
///   min c'x  s.t.  a_i x (<=|>=|=) b_i,  l <= x <= u,  x_j integer for j in I.
struct MipModel {
  std::string name;
  std::vector<double> objective;
  std::vector<SparseRow> rows;
  std::vector<RowSense> row_senses;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> is_integer;
  std::vector<std::string> var_names;
  std::vector<std::string> row_names;
  std::string objective_name = "obj";
  /// True when the source was a maximization; stored c is then negated.
  bool negated_objective = false;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  /// Indices of I in ascending order.
  std::vector<int> integer_indices() const;
  int num_integers() const;
  bool is_binary(int j) const {
    return is_integer[j] && lower[j] == 0.0 && upper[j] == 1.0;
  }

  /// Objective in the sense of the source file.
  double reported_objective(double internal) const {
    return negated_objective ? -internal : internal;
  }

  /// Appends a variable with default name "x<j>".
  int add_variable(double cost, double lo, double up, bool integer,
                   std::string var_name = {});
  /// Appends a row; entries are merged by column and zeros dropped.
  int add_row(SparseRow entries, RowSense sense, double rhs_value,
              std::string row_name = {});

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

bool operator==(const MipModel& a, const MipModel& b);

struct Assignment {
  std::vector<double> values;
  double objective = 0.0;

  Assignment() = default;
  Assignment(const MipModel& model, std::vector<double> x);
};

double dot_objective(const MipModel& model, const std::vector<double>& x);

struct Evaluation {
  bool feasible = false;
  bool integral = false;
  double objective = 0.0;
  double max_violation = 0.0;
};

class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kDefaultIntTol = 1e-6;
inline constexpr double kDefaultFeasTol = 1e-6;

Evaluation evaluate_solution(const MipModel& model, const Assignment& x,
                             double int_tol = kDefaultIntTol,
                             double feas_tol = kDefaultFeasTol);
Evaluation evaluate_solution(const MipModel& model,
                             const std::vector<double>& x,
                             double int_tol = kDefaultIntTol,
                             double feas_tol = kDefaultFeasTol);

/// Row activity a_i x.
double row_activity(const SparseRow& row, const std::vector<double>& x);

/// Distance of v to the nearest integer.
double fractionality(double v);

}  // namespace mipsched
