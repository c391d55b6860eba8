#include <doctest.h>

#include <cmath>

#include "mipsched/generate.hpp"
#include "mipsched/rng.hpp"
#include "mipsched/simplex.hpp"
#include "oracles/rational_lp.hpp"

using namespace mipsched;

namespace {

MipModel two_var_lp() {
  MipModel m;
  m.add_variable(-1.0, 0.0, 10.0, false);
  m.add_variable(-1.0, 0.0, 10.0, false);
  m.add_row({{0, 1.0}, {1, 2.0}}, RowSense::LessEqual, 4.0);
  m.add_row({{0, 3.0}, {1, 1.0}}, RowSense::LessEqual, 6.0);
  return m;
}

double to_d(const mpq_class& q) { return q.get_d(); }

struct RandomLp {
  MipModel model;
  BoundState bounds;
};

RandomLp random_lp(Rng& rng) {
  RandomLp r;
  const int n = static_cast<int>(rng.uniform_int(1, 6));
  const int m = static_cast<int>(rng.uniform_int(1, 6));
  for (int j = 0; j < n; ++j) {
    double lo = static_cast<double>(rng.uniform_int(-9, 9));
    double up = lo + static_cast<double>(rng.uniform_int(0, 9));
    if (rng.uniform_int(0, 4) == 0) lo = -kInf;
    if (rng.uniform_int(0, 4) == 0) up = kInf;
    r.model.add_variable(static_cast<double>(rng.uniform_int(-9, 9)), lo, up, false);
  }
  // half of the LPs get a planted feasible integer point
  const bool planted = rng.coin();
  std::vector<double> p(n);
  for (int j = 0; j < n; ++j) {
    const double lo = std::isfinite(r.model.lower[j]) ? r.model.lower[j] : -9.0;
    const double up = std::isfinite(r.model.upper[j]) ? r.model.upper[j] : lo + 9.0;
    p[j] = static_cast<double>(rng.uniform_int(static_cast<long>(lo), static_cast<long>(std::max(lo, up))));
  }
  for (int i = 0; i < m; ++i) {
    SparseRow row;
    for (int j = 0; j < n; ++j)
      if (rng.uniform_int(0, 3) != 0) row.push_back({j, static_cast<double>(rng.uniform_int(-9, 9))});
    const auto s = rng.uniform_int(0, 5);
    const RowSense sense = s < 3 ? RowSense::LessEqual : (s < 5 ? RowSense::GreaterEqual : RowSense::Equal);
    double rhs = static_cast<double>(rng.uniform_int(-9, 9));
    if (planted) {
      const double act = row_activity(row, p);
      const double slack = static_cast<double>(rng.uniform_int(0, 5));
      rhs = sense == RowSense::LessEqual ? act + slack : sense == RowSense::GreaterEqual ? act - slack : act;
    }
    r.model.add_row(row, sense, rhs);
  }
  r.bounds = BoundState::from_model(r.model);
  return r;
}

void check_against_oracle(const MipModel& m, const BoundState& b, const LpResult& res) {
  const auto exact = oracle::solve_rational(m, b.lower, b.upper);
  switch (exact.kind) {
    case oracle::LpKind::Optimal: {
      REQUIRE(res.status == LpStatus::Optimal);
      const double obj = to_d(exact.objective);
      CHECK(std::fabs(res.objective - obj) <= 1e-6 * std::max(1.0, std::fabs(obj)));
      break;
    }
    case oracle::LpKind::Infeasible: CHECK(res.status == LpStatus::Infeasible); break;
    case oracle::LpKind::Unbounded: CHECK(res.status == LpStatus::Unbounded); break;
  }
}

void check_primal(const MipModel& m, const BoundState& b, const LpResult& res, double tol) {
  REQUIRE(res.x.size() == static_cast<std::size_t>(m.num_vars()));
  double obj = 0.0;
  for (int j = 0; j < m.num_vars(); ++j) {
    CHECK(res.x[j] >= b.lower[j] - tol);
    CHECK(res.x[j] <= b.upper[j] + tol);
    obj += m.objective[j] * res.x[j];
  }
  for (int i = 0; i < m.num_rows(); ++i) {
    const double a = row_activity(m.rows[i], res.x);
    if (m.row_senses[i] != RowSense::GreaterEqual) CHECK(a <= m.rhs[i] + tol);
    if (m.row_senses[i] != RowSense::LessEqual) CHECK(a >= m.rhs[i] - tol);
  }
  CHECK(std::fabs(obj - res.objective) <= 1e-7 * std::max(1.0, std::fabs(obj)));
}

}  // namespace

TEST_CASE("bound-optimal LP without rows") {
  MipModel m;
  m.add_variable(1.0, 0.0, kInf, false);
  const LpResult r = solve_lp(m, BoundState::from_model(m));
  CHECK(r.status == LpStatus::Optimal);
  CHECK(r.objective == 0.0);
  CHECK(r.x[0] == 0.0);
}

TEST_CASE("two variable LP matches vertex enumeration") {
  const MipModel m = two_var_lp();
  const BoundState b = BoundState::from_model(m);
  const LpResult r = solve_lp(m, b);
  const auto exact = oracle::solve_rational(m, b.lower, b.upper);
  REQUIRE(exact.kind == oracle::LpKind::Optimal);
  CHECK(exact.objective == mpq_class(-14, 5));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(to_d(exact.objective)).epsilon(1e-9));
  CHECK(r.x[0] == doctest::Approx(to_d(exact.x[0])).epsilon(1e-9));
  CHECK(r.x[1] == doctest::Approx(to_d(exact.x[1])).epsilon(1e-9));
}

TEST_CASE("empty domain is infeasible without pivoting") {
  MipModel m;
  m.add_variable(1.0, 0.0, 5.0, false);
  BoundState b = BoundState::from_model(m);
  b.lower[0] = 2.0;
  b.upper[0] = 1.0;
  const LpResult r = solve_lp(m, b);
  CHECK(r.status == LpStatus::Infeasible);
  CHECK(r.iterations == 0);
  BoundState marked = BoundState::from_model(m);
  marked.empty_domain = true;
  CHECK(solve_lp(m, marked).status == LpStatus::Infeasible);
}

TEST_CASE("warm resolves agree with cold solves") {
  const MipModel m = two_var_lp();
  LpOptions opt;
  opt.shadow_check = true;
  LpSolver solver(m, {}, opt);
  BoundState b = BoundState::from_model(m);
  const LpResult first = solver.solve(b);
  const LpResult again = solver.resolve(b);
  CHECK(again.status == LpStatus::Optimal);
  CHECK(again.objective == first.objective);

  BoundState fixed = b;
  fixed.fix(0, 0.0);
  const LpResult warm = solver.resolve(fixed);
  const LpResult cold = solve_lp(m, fixed);
  REQUIRE(warm.status == LpStatus::Optimal);
  CHECK(cold.status == LpStatus::Optimal);
  CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-7));
  CHECK(warm.objective == doctest::Approx(-2.0));

  // x0 + 2 x1 <= 4 cannot hold once x1 >= 3
  BoundState dead = b;
  dead.lower[1] = 3.0;
  CHECK(solver.resolve(dead).status == LpStatus::Infeasible);
  CHECK(solve_lp(m, dead).status == LpStatus::Infeasible);
  // and the context recovers afterwards
  CHECK(solver.resolve(b).objective == doctest::Approx(first.objective).epsilon(1e-9));
}

TEST_CASE("unbounded LP") {
  MipModel m;
  m.add_variable(-1.0, 0.0, kInf, false);
  m.add_variable(0.0, 0.0, kInf, false);
  m.add_row({{0, 1.0}, {1, -1.0}}, RowSense::LessEqual, 2.0);
  CHECK(solve_lp(m, BoundState::from_model(m)).status == LpStatus::Unbounded);
}

TEST_CASE("extra rows are part of the LP") {
  const MipModel m = two_var_lp();
  std::vector<LinearRow> cuts{{{{0, 1.0}, {1, 1.0}}, RowSense::LessEqual, 2.0}};
  LpSolver solver(m, cuts);
  CHECK(solver.num_rows() == 3);
  const LpResult r = solver.solve(BoundState::from_model(m));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-2.0));
}

TEST_CASE("200 random LPs agree with the rational oracle") {
  Rng rng(2024);
  int counts[3] = {0, 0, 0};
  for (int k = 0; k < 200; ++k) {
    CAPTURE(k);
    const RandomLp lp = random_lp(rng);
    const LpResult r = solve_lp(lp.model, lp.bounds);
    check_against_oracle(lp.model, lp.bounds, r);
    if (r.status == LpStatus::Optimal) check_primal(lp.model, lp.bounds, r, 1e-7);
    ++counts[r.status == LpStatus::Optimal ? 0 : r.status == LpStatus::Infeasible ? 1 : 2];
  }
  MESSAGE("optimal ", counts[0], ", infeasible ", counts[1], ", unbounded ", counts[2]);
  CHECK(counts[0] > 0);
  CHECK(counts[1] > 0);
  CHECK(counts[2] > 0);
}

TEST_CASE("random bound changes: warm equals cold, oracle agrees") {
  Rng rng(77);
  for (int k = 0; k < 60; ++k) {
    const RandomLp lp = random_lp(rng);
    LpOptions opt;
    opt.shadow_check = true;
    LpSolver solver(lp.model, {}, opt);
    solver.solve(lp.bounds);
    BoundState b = lp.bounds;
    for (int step = 0; step < 8; ++step) {
      const int j = static_cast<int>(rng.uniform_int(0, lp.model.num_vars() - 1));
      const double v = static_cast<double>(rng.uniform_int(-9, 9));
      if (rng.coin()) b.lower[j] = std::max(b.lower[j], v);
      else b.upper[j] = std::min(b.upper[j], v);
      LpResult warm;
      CHECK_NOTHROW(warm = solver.resolve(b));
      const LpResult cold = solve_lp(lp.model, b);
      CHECK(warm.status == cold.status);
      if (warm.status == LpStatus::Optimal && cold.status == LpStatus::Optimal)
        CHECK(std::fabs(warm.objective - cold.objective) <= 1e-7 * std::max(1.0, std::fabs(cold.objective)));
      if (step % 4 == 3) check_against_oracle(lp.model, b, warm);
    }
  }
}

TEST_CASE("solves are deterministic") {
  const MipModel m = generate_instance(Family::Gap, {8, 3}, 5);
  const BoundState b = BoundState::from_model(m);
  const LpResult a = solve_lp(m, b);
  for (int rep = 0; rep < 3; ++rep) {
    const LpResult r = solve_lp(m, b);
    CHECK(r.iterations == a.iterations);
    CHECK(r.objective == a.objective);
    CHECK(r.x == a.x);
  }
}

TEST_CASE("LP relaxations of generated instances satisfy the primal contract") {
  for (Family fam : {Family::Knapsack, Family::SetCover, Family::Gap}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const MipModel m = generate_instance(fam, {12, 4}, seed);
      const BoundState b = BoundState::from_model(m);
      const LpResult r = solve_lp(m, b);
      REQUIRE(r.status == LpStatus::Optimal);
      check_primal(m, b, r, 1e-7);
    }
  }
}
