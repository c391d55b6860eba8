#pragma once

// Reference versions of the scheduler arithmetic, written out directly
// from the update rules without sharing code with the library.

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

inline long skip_count(long n_fail, double beta) {
  return static_cast<long>(std::floor(std::exp(beta * static_cast<double>(n_fail)))) - 1;
}

inline double next_f(double f, bool found, bool infeasible, double gamma, double lo, double hi) {
  if (found || infeasible) return std::max((1.0 - gamma) * f, lo);
  return std::min((1.0 + gamma) * f, hi);
}

inline double next_q(double q, bool found, double eta, double lo, double hi) {
  if (!found) return std::max((1.0 - eta) * q, lo);
  return std::min((1.0 + eta) * q, hi);
}

inline double eps_t(double eps, int arms, long t) {
  return eps * std::sqrt(static_cast<double>(arms) / static_cast<double>(t));
}

struct Reward {
  double sol, gap, eff, conf, total;
};

inline Reward reward(bool found, bool first, double obj_old, double obj_new, double obj_lp,
                     double nodes, double n_max, double conflicts, double v_max,
                     const double (&lambda)[4]) {
  Reward r{};
  r.sol = found ? 1.0 : 0.0;
  if (!found) {
    r.gap = 0.0;
  } else if (first) {
    r.gap = 1.0;
  } else {
    const double improvement = obj_old - obj_new;
    const double den = obj_old - obj_lp;
    if (den <= 1e-9) r.gap = improvement > 0 ? 1.0 : 0.0;
    else r.gap = std::clamp(improvement / den, 0.0, 1.0);
  }
  r.eff = std::clamp(1.0 - nodes / n_max, 0.0, 1.0);
  r.conf = v_max > 0 ? std::min(conflicts / v_max, 1.0) : 0.0;
  r.total = lambda[0] * r.sol + lambda[1] * r.gap + lambda[2] * r.eff + lambda[3] * r.conf;
  return r;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace oracle
