#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "mipsched/harness.hpp"

namespace mipsched {

double shifted_geomean(const std::vector<double>& values, double shift) {
  if (values.empty()) throw EmptyInput("shifted_geomean of an empty list");
  if (!(shift > 0)) throw std::invalid_argument("shift must be positive");
  double acc = 0.0;
  for (double v : values) {
    if (v < 0) throw std::invalid_argument("shifted_geomean needs values >= 0");
    acc += std::log(v + shift);
  }
  return std::exp(acc / static_cast<double>(values.size())) - shift;
}

namespace {

struct Run {
  bool solved = false;
  double time = 0.0;
  double nodes = 0.0;
  double heurtime = 0.0;
};

struct Pair {
  std::string instance;
  Run def;
  Run sch;
};

bool is_solved(const std::string& status) {
  return status == "optimal" || status == "infeasible" || status == "unbounded";
}

double field(const std::vector<std::string>& row, int col, const std::string& name) {
  const std::string& s = row.at(col);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw SchemaMismatch("column " + name + ": not a number: '" + s + "'");
}

double ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

std::string bracket_label(double lo, double hi) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%g,%g]", lo, hi);
  return buf;
}

SummaryRow make_row(std::string label, const std::vector<const Pair*>& pairs,
                    const SummaryOptions& opt) {
  SummaryRow row;
  row.label = std::move(label);
  row.instances = static_cast<long>(pairs.size());
  if (pairs.empty()) {
    row.rel_time = row.rel_nodes = row.rel_heurtime = std::nan("");
    return row;
  }
  auto fill = [&](ModeSummary& m, Run Pair::*which) {
    std::vector<double> t, n, h;
    for (const Pair* p : pairs) {
      const Run& r = p->*which;
      m.solved += r.solved ? 1 : 0;
      t.push_back(r.time);
      n.push_back(r.nodes);
      h.push_back(r.heurtime);
    }
    m.time = shifted_geomean(t, opt.time_shift);
    m.nodes = shifted_geomean(n, opt.node_shift);
    m.heurtime = shifted_geomean(h, opt.heurtime_shift);
  };
  fill(row.default_mode, &Pair::def);
  fill(row.scheduler_mode, &Pair::sch);
  row.rel_time = ratio(row.scheduler_mode.time, row.default_mode.time);
  row.rel_nodes = ratio(row.scheduler_mode.nodes, row.default_mode.nodes);
  row.rel_heurtime = ratio(row.scheduler_mode.heurtime, row.default_mode.heurtime);
  return row;
}

}  // namespace

std::vector<SummaryRow> summarize(const CsvTable& table, const SummaryOptions& opt) {
  const std::vector<std::string> needed = {"instance", "seed", "mode", "status",
                                           "time_s", "nodes", "heurtime_s"};
  std::map<std::string, int> col;
  for (const auto& name : needed) {
    const int c = table.column(name);
    if (c < 0) throw SchemaMismatch("missing column '" + name + "'");
    col[name] = c;
  }

  // (instance, seed) -> runs of both modes, in first-seen order
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::vector<Pair> pairs;
  std::vector<std::array<bool, 2>> present;
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw SchemaMismatch("row has " + std::to_string(row.size()) + " fields, header has " +
                           std::to_string(table.header.size()));
    const auto key = std::make_pair(row[col["instance"]], row[col["seed"]]);
    auto [it, inserted] = index.emplace(key, pairs.size());
    if (inserted) {
      pairs.push_back(Pair{key.first, {}, {}});
      present.push_back({false, false});
    }
    const std::string& mode = row[col["mode"]];
    int which;
    if (mode == "default") which = 0;
    else if (mode == "scheduler") which = 1;
    else throw SchemaMismatch("unknown mode '" + mode + "'");
    Run r;
    r.solved = is_solved(row[col["status"]]);
    r.time = std::min(field(row, col["time_s"], "time_s"), opt.time_limit);
    if (!r.solved) r.time = opt.time_limit;
    r.nodes = field(row, col["nodes"], "nodes");
    r.heurtime = field(row, col["heurtime_s"], "heurtime_s");
    Pair& p = pairs[it->second];
    (which == 0 ? p.def : p.sch) = r;
    present[it->second][which] = true;
  }

  std::vector<const Pair*> complete;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (present[i][0] && present[i][1]) complete.push_back(&pairs[i]);

  std::vector<SummaryRow> out;
  out.push_back(make_row("all", complete, opt));
  for (double t : opt.brackets) {
    std::vector<const Pair*> sel;
    for (const Pair* p : complete) {
      const bool some_solved = p->def.solved || p->sch.solved;
      const bool slow = std::max(p->def.time, p->sch.time) >= t;
      if (some_solved && slow) sel.push_back(p);
    }
    out.push_back(make_row(bracket_label(t, opt.time_limit), sel, opt));
  }
  std::map<std::string, bool> all_opt;
  for (const Pair* p : complete) {
    auto [it, _] = all_opt.emplace(p->instance, true);
    it->second = it->second && p->def.solved && p->sch.solved;
  }
  std::vector<const Pair*> sel;
  for (const Pair* p : complete)
    if (all_opt[p->instance]) sel.push_back(p);
  out.push_back(make_row("all-optimal", sel, opt));
  return out;
}

std::string format_summary(const std::vector<SummaryRow>& rows) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s %6s | %6s %9s %10s %9s | %6s %9s %10s %9s | %8s %8s %8s\n",
                "subset", "runs", "solved", "time", "nodes", "heurtime", "solved", "time",
                "nodes", "heurtime", "rel_time", "rel_node", "rel_heur");
  os << "               default mode                             scheduler mode\n" << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%-14s %6ld | %6ld %9.3f %10.1f %9.3f | %6ld %9.3f %10.1f %9.3f | %8.4f %8.4f %8.4f\n",
                  r.label.c_str(), r.instances, r.default_mode.solved, r.default_mode.time,
                  r.default_mode.nodes, r.default_mode.heurtime, r.scheduler_mode.solved,
                  r.scheduler_mode.time, r.scheduler_mode.nodes, r.scheduler_mode.heurtime,
                  r.rel_time, r.rel_nodes, r.rel_heurtime);
    os << buf;
  }
  return os.str();
}

}  // namespace mipsched
