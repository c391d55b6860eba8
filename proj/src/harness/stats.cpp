#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "mipsched/harness.hpp"
#include "mipsched/heuristics.hpp"

namespace mipsched {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json finite_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

RunStats make_run_stats(const std::string& instance, const MipModel& model,
                        const SolverSettings& settings, const SolveResult& result) {
  RunStats s;
  s.instance = instance;
  s.seed = settings.seed;
  s.mode = settings.mode;
  s.status = to_string(result.status);
  s.objective = result.incumbent ? model.reported_objective(result.incumbent->objective) : std::nan("");
  s.time_s = result.stats.time_s;
  s.nodes = result.stats.nodes;
  s.incumbents_found_by_heuristics = result.stats.incumbents_found_by_heuristics;
  s.heuristic_calls = result.stats.heuristic_calls;
  s.heuristic_successes = result.stats.heuristic_successes;
  s.heurtime_s = std::min(result.stats.heurtime_s, result.stats.time_s);
  s.conflicts = result.stats.conflicts;

  std::array<long, kNumHeuristics> records{};
  std::array<double, kNumHeuristics> reward_sum{};
  double total = 0.0;
  for (const auto& rec : result.call_log) {
    const int i = index_of(rec.heuristic);
    ++records[i];
    reward_sum[i] += rec.reward.r_total;
    total += rec.reward.r_total;
  }
  for (int i = 0; i < kNumHeuristics; ++i) {
    const auto& ph = result.stats.per_heuristic[i];
    auto& arm = s.arms[i];
    arm.pulls = records[i];
    arm.successes = ph.successes;
    arm.mean_reward = records[i] ? reward_sum[i] / static_cast<double>(records[i]) : 0.0;
    arm.final_limit = ph.final_limit;
  }
  if (!result.call_log.empty()) {
    int best = 0;
    for (int i = 1; i < kNumHeuristics; ++i)
      if (records[i] > records[best]) best = i;
    s.most_pulled = heuristic_specs()[best].name;
    s.most_pulled_mean_reward = s.arms[best].mean_reward;
    s.portfolio_mean_reward = total / static_cast<double>(result.call_log.size());
  }
  return s;
}

std::vector<std::string> csv_header() {
  std::vector<std::string> h = {"instance", "seed", "mode", "status", "objective", "time_s",
                                "nodes", "incumbents_found_by_heuristics", "heuristic_calls",
                                "heuristic_successes", "heurtime_s", "conflicts", "most_pulled",
                                "most_pulled_mean_reward", "portfolio_mean_reward"};
  for (const auto& spec : heuristic_specs()) {
    const std::string n(spec.name);
    h.push_back(n + "_pulls");
    h.push_back(n + "_successes");
    h.push_back(n + "_mean_reward");
    h.push_back(n + "_final_limit");
  }
  return h;
}

std::vector<std::string> timing_columns() { return {"time_s", "heurtime_s"}; }

std::string csv_row(const RunStats& s) {
  std::vector<std::string> f = {csv_escape(s.instance),
                                std::to_string(s.seed),
                                std::string(mode_name(s.mode)),
                                s.status,
                                num(s.objective),
                                num(s.time_s),
                                std::to_string(s.nodes),
                                std::to_string(s.incumbents_found_by_heuristics),
                                std::to_string(s.heuristic_calls),
                                std::to_string(s.heuristic_successes),
                                num(s.heurtime_s),
                                std::to_string(s.conflicts),
                                s.most_pulled,
                                num(s.most_pulled_mean_reward),
                                num(s.portfolio_mean_reward)};
  for (const auto& arm : s.arms) {
    f.push_back(std::to_string(arm.pulls));
    f.push_back(std::to_string(arm.successes));
    f.push_back(num(arm.mean_reward));
    f.push_back(num(arm.final_limit));
  }
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ',';
    out += f[i];
  }
  return out;
}

std::string run_stats_json(const RunStats& s) {
  nlohmann::ordered_json j;
  j["type"] = "run";
  j["instance"] = s.instance;
  j["seed"] = s.seed;
  j["mode"] = std::string(mode_name(s.mode));
  j["status"] = s.status;
  j["objective"] = finite_or_null(s.objective);
  j["time_s"] = s.time_s;
  j["nodes"] = s.nodes;
  j["incumbents_found_by_heuristics"] = s.incumbents_found_by_heuristics;
  j["heuristic_calls"] = s.heuristic_calls;
  j["heuristic_successes"] = s.heuristic_successes;
  j["heurtime_s"] = s.heurtime_s;
  j["conflicts"] = s.conflicts;
  j["most_pulled"] = s.most_pulled;
  j["most_pulled_mean_reward"] = s.most_pulled_mean_reward;
  j["portfolio_mean_reward"] = s.portfolio_mean_reward;
  nlohmann::ordered_json arms = nlohmann::ordered_json::object();
  for (const auto& spec : heuristic_specs()) {
    const auto& a = s.arms[index_of(spec.id)];
    arms[std::string(spec.name)] = {{"pulls", a.pulls},
                                    {"successes", a.successes},
                                    {"mean_reward", a.mean_reward},
                                    {"final_limit", a.final_limit}};
  }
  j["heuristics"] = arms;
  return j.dump();
}

std::string call_record_json(const CallRecord& r) {
  nlohmann::ordered_json j;
  j["type"] = "call";
  j["t"] = r.t;
  j["node"] = r.node;
  j["h"] = std::string(heuristic_name(r.heuristic));
  j["warmstart"] = r.warmstart;
  j["found_incumbent"] = r.found_incumbent;
  j["sub_mip_infeasible"] = r.sub_mip_infeasible;
  j["nodes_used"] = r.nodes_used;
  j["conflicts_found"] = r.conflicts_found;
  j["n_max"] = r.n_max;
  j["v_max_before"] = r.v_max_before;
  j["is_first_incumbent"] = r.context.is_first_incumbent;
  j["obj_old"] = finite_or_null(r.context.obj_old);
  j["obj_new"] = finite_or_null(r.context.obj_new);
  j["obj_lp"] = finite_or_null(r.context.obj_lp);
  j["reward"] = {{"r_sol", r.reward.r_sol},
                 {"r_gap", r.reward.r_gap},
                 {"r_eff", r.reward.r_eff},
                 {"r_conf", r.reward.r_conf},
                 {"r_total", r.reward.r_total}};
  j["weight_after"] = r.weight_after;
  j["limit_after"] = r.limit_after;
  j["n_fail_after"] = r.n_fail_after;
  j["skip_after"] = r.skip_after;
  j["wall_time_s"] = r.wall_time_s;
  return j.dump();
}

int CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
      }
      rec.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (any || !field.empty()) {
    rec.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  CsvTable t;
  if (records.empty()) return t;
  t.header = std::move(records.front());
  t.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
  return t;
}

}  // namespace mipsched
