#include <doctest.h>

#include <cmath>

#include "mipsched/generate.hpp"
#include "mipsched/model.hpp"
#include "mipsched/mps.hpp"
#include "mipsched/rng.hpp"
#include "oracles/enumerate.hpp"

using namespace mipsched;

namespace {

const char* kKnapsackMps = R"(NAME          tiny
OBJSENSE
    MAX
ROWS
 N  profit
 L  cap
COLUMNS
    MARKER                 'MARKER'                 'INTORG'
    item1     profit    5.0          cap       3.0
    item2     profit    4.0          cap       2.0
    MARKER                 'MARKER'                 'INTEND'
RHS
    rhs       cap       4.0
ENDATA
)";

MipModel one_row_model() {
  MipModel m;
  m.add_variable(1.0, 0.0, 1.0, true);
  m.add_variable(1.0, 0.0, 1.0, true);
  m.add_row({{0, 1.0}, {1, 1.0}}, RowSense::LessEqual, 1.0);
  return m;
}

MpsErrorKind kind_of(const std::string& text) {
  try {
    parse_mps(text);
  } catch (const MpsError& e) {
    return e.kind();
  }
  FAIL("no MpsError thrown");
  return MpsErrorKind::MalformedSection;
}

}  // namespace

TEST_CASE("parse_mps reads a two item knapsack") {
  const MipModel m = parse_mps(kKnapsackMps);
  CHECK(m.name == "tiny");
  CHECK(m.num_vars() == 2);
  CHECK(m.num_rows() == 1);
  CHECK(m.num_integers() == 2);
  CHECK(m.negated_objective);
  CHECK(m.objective == std::vector<double>{-5.0, -4.0});
  CHECK(m.var_names == std::vector<std::string>{"item1", "item2"});
  CHECK(m.row_names == std::vector<std::string>{"cap"});
  CHECK(m.row_senses[0] == RowSense::LessEqual);
  CHECK(m.rhs[0] == 4.0);
  REQUIRE(m.rows[0].size() == 2);
  CHECK(m.rows[0][0].col == 0);
  CHECK(m.rows[0][0].value == 3.0);
  CHECK(m.rows[0][1].value == 2.0);
  CHECK(m.lower == std::vector<double>{0.0, 0.0});
  CHECK(m.upper == std::vector<double>{1.0, 1.0});
  CHECK(m.reported_objective(-9.0) == 9.0);
}

TEST_CASE("parse_mps errors") {
  std::string no_end = kKnapsackMps;
  no_end.erase(no_end.find("ENDATA"));
  CHECK(kind_of(no_end) == MpsErrorKind::MalformedSection);

  CHECK(kind_of("NAME x\nCOLUMNS\n x obj 1\nENDATA\n") == MpsErrorKind::MalformedSection);
  CHECK(kind_of("NAME x\nROWS\n N obj\n L c1\nCOLUMNS\n x R9 1\nENDATA\n") ==
        MpsErrorKind::UnknownRowReference);
  CHECK(kind_of("NAME x\nROWS\n N obj\n L c1\nCOLUMNS\n x c1 1 c1 2\nENDATA\n") ==
        MpsErrorKind::DuplicateColumnEntry);
}

TEST_CASE("parse_mps bounds and ranges") {
  const char* text = R"(NAME b
ROWS
 N obj
 L r1
 G r2
 E r3
COLUMNS
 x obj 1 r1 1
 x r2 1 r3 1
 y obj -1 r1 1
 z obj 2 r3 1
 w obj 1 r2 2
RHS
 rhs r1 10 r2 1
 rhs r3 3
RANGES
 rng r1 4 r3 -2
BOUNDS
 MI bnd x
 UP bnd x 8
 FR bnd y
 FX bnd z 1.5
 BV bnd w
ENDATA
)";
  const MipModel m = parse_mps(text);
  CHECK(m.lower[0] == -kInf);
  CHECK(m.upper[0] == 8.0);
  CHECK(m.lower[1] == -kInf);
  CHECK(m.upper[1] == kInf);
  CHECK(m.lower[2] == 1.5);
  CHECK(m.upper[2] == 1.5);
  CHECK(m.is_binary(3));
  // r1: 6 <= . <= 10, r3 (E, R<0): 1 <= . <= 3
  REQUIRE(m.num_rows() == 5);
  CHECK(m.row_senses[2] == RowSense::LessEqual);
  CHECK(m.rhs[2] == 3.0);
  CHECK(m.row_names[3] == "r1_rng");
  CHECK(m.row_senses[3] == RowSense::GreaterEqual);
  CHECK(m.rhs[3] == 6.0);
  CHECK(m.row_names[4] == "r3_rng");
  CHECK(m.row_senses[4] == RowSense::GreaterEqual);
  CHECK(m.rhs[4] == 1.0);
}

TEST_CASE("write_mps round trip on generated instances") {
  for (Family fam : {Family::Knapsack, Family::SetCover, Family::Gap}) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const MipModel m = generate_instance(fam, {8 + static_cast<int>(seed), 3}, seed);
      const MipModel back = parse_mps(write_mps(m));
      CAPTURE(m.name);
      CHECK(back.num_vars() == m.num_vars());
      CHECK(back.num_rows() == m.num_rows());
      CHECK(back.integer_indices() == m.integer_indices());
      CHECK(back.lower == m.lower);
      CHECK(back.upper == m.upper);
      CHECK(back.objective == m.objective);
      CHECK(back.rhs == m.rhs);
      CHECK(back.row_senses == m.row_senses);
      bool same_rows = true;
      for (int i = 0; i < m.num_rows(); ++i) {
        same_rows = same_rows && back.rows[i].size() == m.rows[i].size();
        for (std::size_t k = 0; same_rows && k < m.rows[i].size(); ++k)
          same_rows = back.rows[i][k].col == m.rows[i][k].col && back.rows[i][k].value == m.rows[i][k].value;
      }
      CHECK(same_rows);
    }
  }
}

TEST_CASE("generators are deterministic and feasible by construction") {
  const MipModel a = generate_instance(Family::Knapsack, {10, 1}, 7);
  const MipModel b = generate_instance(Family::Knapsack, {10, 1}, 7);
  CHECK(a == b);
  CHECK(write_mps(a) == write_mps(b));
  CHECK_FALSE(a == generate_instance(Family::Knapsack, {10, 1}, 8));

  const MipModel sc = generate_instance(Family::SetCover, {20, 10}, 1);
  CHECK(sc.num_vars() == 20);
  CHECK(sc.num_rows() == 10);
  const auto ones = evaluate_solution(sc, std::vector<double>(20, 1.0));
  CHECK(ones.feasible);
  CHECK(ones.integral);

  const auto gap = generate_with_witness(Family::Gap, {12, 4}, 3);
  CHECK(gap.model.num_vars() == 48);
  const auto ev = evaluate_solution(gap.model, gap.witness);
  CHECK(ev.feasible);
  CHECK(ev.integral);
  // the planted objective, summed directly from the witness
  double planted = 0.0;
  int assigned = 0;
  for (int j = 0; j < gap.model.num_vars(); ++j) {
    if (gap.witness.values[j] == 1.0) {
      planted += gap.model.objective[j];
      ++assigned;
    }
  }
  CHECK(assigned == 12);
  CHECK(ev.objective == doctest::Approx(planted).epsilon(1e-12));

  for (Family fam : {Family::Knapsack, Family::SetCover, Family::Gap}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto g = generate_with_witness(fam, {6 + static_cast<int>(seed % 5), 1 + static_cast<int>(seed % 3)}, seed);
      CHECK(evaluate_solution(g.model, g.witness).feasible);
      bool nonzero = false;
      for (double c : g.model.objective) nonzero = nonzero || c != 0.0;
      CHECK(nonzero);
      CHECK_NOTHROW(g.model.validate());
    }
  }
}

TEST_CASE("evaluate_solution") {
  const MipModel m = one_row_model();
  auto zero = evaluate_solution(m, std::vector<double>{0.0, 0.0});
  CHECK(zero.feasible);
  CHECK(zero.integral);
  CHECK(zero.objective == 0.0);

  auto half = evaluate_solution(m, std::vector<double>{0.5, 0.5});
  CHECK(half.feasible);
  CHECK_FALSE(half.integral);

  auto both = evaluate_solution(m, std::vector<double>{1.0, 1.0});
  CHECK_FALSE(both.feasible);
  CHECK(both.max_violation == doctest::Approx(1.0));

  CHECK_THROWS_AS(evaluate_solution(m, std::vector<double>{1.0}), DimensionMismatch);
  CHECK_THROWS_AS(Assignment(m, {1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST_CASE("Assignment caches the objective") {
  const MipModel m = generate_instance(Family::Gap, {5, 3}, 11);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(m.num_vars());
    for (double& v : x) v = rng.uniform01();
    const Assignment a(m, x);
    double direct = 0.0;
    for (int j = 0; j < m.num_vars(); ++j) direct += m.objective[j] * x[j];
    CHECK(std::fabs(a.objective - direct) <= 1e-9);
  }
}

TEST_CASE("objective evaluation is linear") {
  const MipModel m = generate_instance(Family::SetCover, {15, 8}, 4);
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(m.num_vars()), y(m.num_vars()), z(m.num_vars());
    const double alpha = rng.uniform01();
    for (int j = 0; j < m.num_vars(); ++j) {
      x[j] = rng.uniform01();
      y[j] = rng.uniform01();
      z[j] = alpha * x[j] + (1 - alpha) * y[j];
    }
    const double ox = evaluate_solution(m, x).objective;
    const double oy = evaluate_solution(m, y).objective;
    CHECK(std::fabs(evaluate_solution(m, z).objective - (alpha * ox + (1 - alpha) * oy)) <= 1e-9);
  }
}

TEST_CASE("add_row merges duplicate columns and drops zeros") {
  MipModel m;
  m.add_variable(1, 0, 1, true);
  m.add_variable(1, 0, 1, true);
  m.add_row({{1, 2.0}, {0, 1.0}, {1, -2.0}, {0, 3.0}}, RowSense::LessEqual, 4);
  REQUIRE(m.rows[0].size() == 1);
  CHECK(m.rows[0][0].col == 0);
  CHECK(m.rows[0][0].value == 4.0);
}

TEST_CASE("load_instance URIs") {
  const MipModel a = load_instance("gen:knapsack:n=10,m=1,seed=7");
  CHECK(a == generate_instance(Family::Knapsack, {10, 1}, 7));
  CHECK(a.name == "gen:knapsack:n=10,m=1,seed=7");
  CHECK(load_instance("gen:gap:n=4,m=2,seed=1").num_vars() == 8);
  CHECK_THROWS(load_instance("gen:nosuch:n=3,m=1,seed=1"));
  CHECK_THROWS(load_instance("gen:knapsack:n=0,m=1,seed=1"));
  CHECK_THROWS(load_instance("/nonexistent/file.mps"));
}

TEST_CASE("brute force oracle sanity on the tiny knapsack") {
  const auto best = oracle::brute_force(parse_mps(kKnapsackMps));
  REQUIRE(best);
  // capacity 4, weights (3,2): only one item fits, item1 is worth more
  CHECK(best->objective == -5.0);
}
