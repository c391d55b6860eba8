#include <charconv>
#include <functional>
#include <map>
#include <string>

#include "mipsched/harness.hpp"

namespace mipsched {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view key, std::string_view v) {
  const std::string s(v);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw ConfigError("bad numeric value for " + std::string(key) + ": '" + s + "'");
  return out;
}

long to_long(std::string_view key, std::string_view v) {
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("bad integer value for " + std::string(key) + ": '" + std::string(v) + "'");
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("bad boolean value for " + std::string(key) + ": '" + std::string(v) + "'");
}

using Setter = std::function<void(SolverSettings&, std::string_view, std::string_view)>;

Setter dbl(double SolverSettings::*m) {
  return [m](SolverSettings& s, std::string_view k, std::string_view v) { s.*m = to_double(k, v); };
}

template <class Sub>
Setter dbl(Sub SolverSettings::*sub, double Sub::*m) {
  return [sub, m](SolverSettings& s, std::string_view k, std::string_view v) {
    (s.*sub).*m = to_double(k, v);
  };
}

template <class Sub>
Setter integer(Sub SolverSettings::*sub, int Sub::*m) {
  return [sub, m](SolverSettings& s, std::string_view k, std::string_view v) {
    (s.*sub).*m = static_cast<int>(to_long(k, v));
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"node_limit", [](SolverSettings& s, std::string_view k, std::string_view v) { s.node_limit = to_long(k, v); }},
      {"time_limit", dbl(&SolverSettings::time_limit_s)},
      {"seed", [](SolverSettings& s, std::string_view k, std::string_view v) {
         s.seed = static_cast<std::uint64_t>(to_long(k, v));
       }},
      {"mode", [](SolverSettings& s, std::string_view, std::string_view v) {
         auto m = parse_mode(v);
         if (!m) throw ConfigError("unknown mode '" + std::string(v) + "'");
         s.mode = *m;
       }},
      {"plunge_depth", [](SolverSettings& s, std::string_view k, std::string_view v) {
         s.plunge_depth = static_cast<int>(to_long(k, v));
       }},
      {"int_tol", dbl(&SolverSettings::int_tol)},
      {"feas_tol", dbl(&SolverSettings::feas_tol)},
      {"epsilon", dbl(&SolverSettings::scheduler, &SchedulerConfig::epsilon)},
      {"lambda_sol", dbl(&SolverSettings::scheduler, &SchedulerConfig::lambda_sol)},
      {"lambda_gap", dbl(&SolverSettings::scheduler, &SchedulerConfig::lambda_gap)},
      {"lambda_eff", dbl(&SolverSettings::scheduler, &SchedulerConfig::lambda_eff)},
      {"lambda_conf", dbl(&SolverSettings::scheduler, &SchedulerConfig::lambda_conf)},
      {"beta", dbl(&SolverSettings::scheduler, &SchedulerConfig::beta)},
      {"recency_alpha", dbl(&SolverSettings::scheduler, &SchedulerConfig::recency_alpha)},
      {"weight_mode", [](SolverSettings& s, std::string_view, std::string_view v) {
         if (v == "average") s.scheduler.weight_mode = WeightMode::Average;
         else if (v == "recency") s.scheduler.weight_mode = WeightMode::Recency;
         else throw ConfigError("unknown weight_mode '" + std::string(v) + "'");
       }},
      {"f_min", dbl(&SolverSettings::lns, &LnsConfig::f_min)},
      {"f_max", dbl(&SolverSettings::lns, &LnsConfig::f_max)},
      {"gamma", dbl(&SolverSettings::lns, &LnsConfig::gamma)},
      {"f_init", dbl(&SolverSettings::lns, &LnsConfig::f_init)},
      {"lns_node_budget", integer(&SolverSettings::lns, &LnsConfig::node_budget)},
      {"q_min", dbl(&SolverSettings::diving, &DivingConfig::q_min)},
      {"q_max", dbl(&SolverSettings::diving, &DivingConfig::q_max)},
      {"eta", dbl(&SolverSettings::diving, &DivingConfig::eta)},
      {"q_init", dbl(&SolverSettings::diving, &DivingConfig::q_init)},
      {"dive_max_depth", integer(&SolverSettings::diving, &DivingConfig::max_depth)},
      {"default_freq", integer(&SolverSettings::default_schedule, &DefaultScheduleConfig::freq)},
      {"default_offset", integer(&SolverSettings::default_schedule, &DefaultScheduleConfig::offset)},
      {"lp_iter_limit", [](SolverSettings& s, std::string_view k, std::string_view v) {
         s.lp.iter_limit = static_cast<int>(to_long(k, v));
       }},
      {"lp_shadow_check", [](SolverSettings& s, std::string_view k, std::string_view v) {
         s.lp.shadow_check = to_bool(k, v);
       }},
  };
  return table;
}

}  // namespace

void apply_setting(SolverSettings& settings, std::string_view key, std::string_view value) {
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  it->second(settings, key, value);
}

void apply_config_text(SolverSettings& settings, std::string_view text) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    try {
      apply_setting(settings, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::vector<std::string> known_setting_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

}  // namespace mipsched
