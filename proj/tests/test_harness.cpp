#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mipsched/harness.hpp"
#include "oracles/formulas.hpp"

using namespace mipsched;
using nlohmann::json;

namespace {

double sgm(const std::vector<double>& v, double shift) {
  long double acc = 0;
  for (double x : v) acc += std::log(static_cast<long double>(x) + shift);
  return static_cast<double>(std::exp(acc / v.size()) - shift);
}

std::string to_csv(const std::vector<RunStats>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

// Drops the timing columns from every line of a CSV.
std::vector<std::vector<std::string>> strip_timing(const std::string& csv) {
  const CsvTable t = parse_csv(csv);
  std::set<int> drop;
  for (const auto& name : timing_columns()) drop.insert(t.column(name));
  std::vector<std::vector<std::string>> out;
  auto keep = [&](const std::vector<std::string>& row) {
    std::vector<std::string> r;
    for (std::size_t i = 0; i < row.size(); ++i)
      if (!drop.count(static_cast<int>(i))) r.push_back(row[i]);
    return r;
  };
  out.push_back(keep(t.header));
  for (const auto& row : t.rows) out.push_back(keep(row));
  return out;
}

BenchOptions small_bench() {
  BenchOptions o;
  o.base.node_limit = 200;
  o.base.time_limit_s = 30;
  return o;
}

const std::vector<std::string> kInstances = {"gen:knapsack:n=10,m=1,seed=1",
                                             "gen:set_cover:n=10,m=6,seed=2",
                                             "gen:gap:n=4,m=3,seed=3"};

std::string csv_of(const std::vector<std::vector<std::string>>& cells) {
  std::string s;
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
    s += "\n";
  }
  return s;
}

}  // namespace

TEST_CASE("shifted_geomean") {
  CHECK(shifted_geomean({1, 100}, 1) == doctest::Approx(std::sqrt(202.0) - 1).epsilon(1e-12));
  CHECK(shifted_geomean({1, 100}, 1) == doctest::Approx(13.213).epsilon(1e-4));
  for (double s : {0.5, 1.0, 10.0, 100.0}) CHECK(shifted_geomean({5, 5, 5}, s) == doctest::Approx(5));
  CHECK(shifted_geomean({0}, 10) == doctest::Approx(0.0));
  CHECK_THROWS_AS(shifted_geomean({}, 1), EmptyInput);
  CHECK_THROWS(shifted_geomean({1}, 0));
  CHECK_THROWS(shifted_geomean({-1}, 1));
}

TEST_CASE("config overrides") {
  SolverSettings s;
  apply_config_text(s, "# tuning\nepsilon = 0.5\n  beta=0.2  \n\nweight_mode = recency\nmode = default\n");
  CHECK(s.scheduler.epsilon == 0.5);
  CHECK(s.scheduler.beta == 0.2);
  CHECK(s.scheduler.weight_mode == WeightMode::Recency);
  CHECK(s.mode == HeuristicMode::Default);
  CHECK_THROWS_AS(apply_config_text(s, "no_such_constant = 3"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(s, "epsilon"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(s, "epsilon = abc"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(s, "weight_mode = sometimes"), ConfigError);
  for (const auto& key : known_setting_keys()) CHECK_NOTHROW(apply_setting(s, key, key == "mode" ? "scheduler" : key == "weight_mode" ? "average" : key == "lp_shadow_check" ? "0" : "1"));
}

TEST_CASE("CSV schema is stable") {
  const std::vector<std::string> golden = {
      "instance", "seed", "mode", "status", "objective", "time_s", "nodes",
      "incumbents_found_by_heuristics", "heuristic_calls", "heuristic_successes", "heurtime_s",
      "conflicts", "most_pulled", "most_pulled_mean_reward", "portfolio_mean_reward",
      "rens_pulls", "rens_successes", "rens_mean_reward", "rens_final_limit",
      "rins_pulls", "rins_successes", "rins_mean_reward", "rins_final_limit",
      "mutation_pulls", "mutation_successes", "mutation_mean_reward", "mutation_final_limit",
      "frac_dive_pulls", "frac_dive_successes", "frac_dive_mean_reward", "frac_dive_final_limit",
      "coef_dive_pulls", "coef_dive_successes", "coef_dive_mean_reward", "coef_dive_final_limit",
      "rand_dive_pulls", "rand_dive_successes", "rand_dive_mean_reward", "rand_dive_final_limit"};
  CHECK(csv_header() == golden);
  const auto rows = run_bench({kInstances[0]}, small_bench());
  const CsvTable t = parse_csv(to_csv(rows));
  CHECK(t.header == golden);
  for (const auto& r : t.rows) CHECK(r.size() == golden.size());
}

TEST_CASE("JSONL schema and reward replay") {
  SolverSettings s;
  s.seed = 3;
  std::ostringstream log;
  const RunStats stats = run_instance("gen:knapsack:n=20,m=2,seed=4", s, &log);
  std::istringstream in(log.str());
  std::string line;
  const std::set<std::string> call_keys = {
      "type", "t", "node", "h", "warmstart", "found_incumbent", "sub_mip_infeasible",
      "nodes_used", "conflicts_found", "n_max", "v_max_before", "is_first_incumbent", "obj_old",
      "obj_new", "obj_lp", "reward", "weight_after", "limit_after", "n_fail_after",
      "skip_after", "wall_time_s"};
  const double lambda[4] = {0.3, 0.3, 0.2, 0.2};
  long calls = 0;
  bool saw_run = false;
  while (std::getline(in, line)) {
    const json j = json::parse(line);
    if (j["type"] == "call") {
      std::set<std::string> keys;
      for (auto it = j.begin(); it != j.end(); ++it) keys.insert(it.key());
      CHECK(keys == call_keys);
      const auto ref = oracle::reward(
          j["found_incumbent"].get<bool>(), j["is_first_incumbent"].get<bool>(),
          j["obj_old"].get<double>(), j["obj_new"].get<double>(), j["obj_lp"].get<double>(),
          j["nodes_used"].get<double>(), j["n_max"].get<double>(),
          j["conflicts_found"].get<double>(), j["v_max_before"].get<double>(), lambda);
      CHECK(std::fabs(ref.total - j["reward"]["r_total"].get<double>()) <= 1e-9);
      ++calls;
    } else {
      CHECK(j["type"] == "run");
      CHECK(j.contains("heuristics"));
      CHECK(j["instance"] == "gen:knapsack:n=20,m=2,seed=4");
      saw_run = true;
    }
  }
  CHECK(saw_run);
  CHECK(calls == stats.heuristic_calls);
  CHECK(calls > 0);
}

TEST_CASE("default mode logs no bandit records") {
  SolverSettings s;
  s.mode = HeuristicMode::Default;
  std::ostringstream log;
  const RunStats stats = run_instance("gen:knapsack:n=12,m=2,seed=5", s, &log);
  CHECK(log.str().find("\"type\":\"call\"") == std::string::npos);
  CHECK(stats.most_pulled.empty());
}

TEST_CASE("bench: cross product, determinism, empty manifest") {
  BenchOptions o = small_bench();
  const auto rows = run_bench(kInstances, o);
  CHECK(rows.size() == 24);
  for (const auto& r : rows) CHECK(r.status != "error");
  o.jobs = 3;
  const auto again = run_bench(kInstances, o);
  CHECK(strip_timing(to_csv(rows)) == strip_timing(to_csv(again)));

  const std::string empty = to_csv(run_bench(read_manifest("# nothing here\n\n"), o));
  const CsvTable t = parse_csv(empty);
  CHECK(t.header == csv_header());
  CHECK(t.rows.empty());

  const auto bad = run_bench({"gen:nonsense:n=3"}, o);
  CHECK(bad.size() == 8);
  for (const auto& r : bad) CHECK(r.status == "error");
}

TEST_CASE("read_manifest") {
  CHECK(read_manifest("a.mps\n  # c\n b.mps  # trailing\n\n") == std::vector<std::string>{"a.mps", "b.mps"});
}

TEST_CASE("summarize: identical modes give unit ratios") {
  const auto rows = run_bench(kInstances, small_bench());
  CsvTable t = parse_csv(to_csv(rows));
  const int mode = t.column("mode");
  // copy the default rows over the scheduler rows
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> def;
  for (const auto& r : t.rows)
    if (r[mode] == "default") def[{r[0], r[1]}] = r;
  for (auto& r : t.rows)
    if (r[mode] == "scheduler") {
      r = def[{r[0], r[1]}];
      r[mode] = "scheduler";
    }
  for (const auto& row : summarize(t, SummaryOptions{})) {
    if (row.instances == 0) continue;
    CHECK(row.rel_time == doctest::Approx(1.0));
    CHECK(row.rel_nodes == doctest::Approx(1.0));
    CHECK(row.rel_heurtime == doctest::Approx(1.0));
  }
}

TEST_CASE("summarize: hand-built table") {
  const std::string csv = csv_of({{"instance", "seed", "mode", "status", "time_s", "nodes", "heurtime_s"},
                                  {"a", "1", "default", "optimal", "2", "100", "0.5"},
                                  {"a", "1", "scheduler", "optimal", "3", "90", "0.25"},
                                  {"b", "1", "default", "optimal", "5", "200", "1"},
                                  {"b", "1", "scheduler", "optimal", "4", "180", "1.5"}});
  SummaryOptions opt;
  opt.brackets = {1, 1000};
  const auto rows = summarize(parse_csv(csv), opt);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].label == "all");
  CHECK(rows[0].instances == 2);
  CHECK(rows[0].rel_nodes == doctest::Approx(sgm({90, 180}, 100) / sgm({100, 200}, 100)).epsilon(1e-12));
  CHECK(rows[0].rel_time == doctest::Approx(sgm({3, 4}, 1) / sgm({2, 5}, 1)).epsilon(1e-12));
  CHECK(rows[0].rel_heurtime == doctest::Approx(sgm({0.25, 1.5}, 1) / sgm({0.5, 1}, 1)).epsilon(1e-12));
  CHECK(rows[1].instances == 2);
  CHECK(rows[2].instances == 0);
  CHECK(std::isnan(rows[2].rel_nodes));
  CHECK(rows[3].label == "all-optimal");
  CHECK(rows[3].instances == 2);
  CHECK_FALSE(format_summary(rows).empty());

  // an unsolved run counts at the time limit and leaves all-optimal
  const std::string partial = csv_of({{"instance", "seed", "mode", "status", "time_s", "nodes", "heurtime_s"},
                                      {"a", "1", "default", "timelimit", "2", "100", "0.5"},
                                      {"a", "1", "scheduler", "optimal", "3", "90", "0.25"}});
  opt.time_limit = 60;
  const auto p = summarize(parse_csv(partial), opt);
  CHECK(p[0].default_mode.time == doctest::Approx(60));
  CHECK(p[0].default_mode.solved == 0);
  CHECK(p.back().instances == 0);
}

TEST_CASE("summarize: schema errors") {
  CHECK_THROWS_AS(summarize(parse_csv("instance,seed,mode\na,1,default\n"), SummaryOptions{}), SchemaMismatch);
  CHECK_THROWS_AS(summarize(parse_csv(csv_of({{"instance", "seed", "mode", "status", "time_s", "nodes", "heurtime_s"},
                                               {"a", "1", "default", "optimal", "2"}})),
                            SummaryOptions{}),
                  SchemaMismatch);
  CHECK_THROWS_AS(summarize(parse_csv(csv_of({{"instance", "seed", "mode", "status", "time_s", "nodes", "heurtime_s"},
                                               {"a", "1", "default", "optimal", "x", "1", "1"}})),
                            SummaryOptions{}),
                  SchemaMismatch);
}

TEST_CASE("summarize is reproducible on non-timing columns") {
  const auto a = run_bench(kInstances, small_bench());
  const auto b = run_bench(kInstances, small_bench());
  const auto ra = summarize(parse_csv(to_csv(a)), SummaryOptions{});
  const auto rb = summarize(parse_csv(to_csv(b)), SummaryOptions{});
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    CHECK(ra[i].default_mode.nodes == rb[i].default_mode.nodes);
    CHECK(ra[i].scheduler_mode.nodes == rb[i].scheduler_mode.nodes);
    CHECK(ra[i].default_mode.solved == rb[i].default_mode.solved);
  }
}
