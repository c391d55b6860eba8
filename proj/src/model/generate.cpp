#include "mipsched/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mipsched/rng.hpp"

namespace mipsched {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Knapsack: return "knapsack";
    case Family::SetCover: return "set_cover";
    case Family::Gap: return "gap";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "knapsack") return Family::Knapsack;
  if (name == "set_cover") return Family::SetCover;
  if (name == "gap") return Family::Gap;
  return std::nullopt;
}

namespace {

std::string instance_name(Family f, InstanceSize size, std::uint64_t seed) {
  return "gen:" + std::string(family_name(f)) + ":n=" + std::to_string(size.n) +
         ",m=" + std::to_string(size.m) + ",seed=" + std::to_string(seed);
}

// Multi-row 0/1 knapsack with weakly correlated profits; all-zeros feasible.
GeneratedInstance knapsack(InstanceSize size, Rng& rng) {
  GeneratedInstance g;
  MipModel& model = g.model;
  std::vector<std::vector<double>> w(size.m, std::vector<double>(size.n));
  for (auto& row : w)
    for (auto& v : row) v = static_cast<double>(rng.uniform_int(1, 30));
  for (int j = 0; j < size.n; ++j) {
    double mean = 0.0;
    for (int i = 0; i < size.m; ++i) mean += w[i][j];
    mean /= size.m;
    const double profit = std::max(1.0, std::round(mean) + static_cast<double>(rng.uniform_int(-5, 5)));
    model.add_variable(-profit, 0.0, 1.0, true);
  }
  model.negated_objective = true;
  for (int i = 0; i < size.m; ++i) {
    SparseRow row;
    double total = 0.0;
    for (int j = 0; j < size.n; ++j) {
      row.push_back({j, w[i][j]});
      total += w[i][j];
    }
    model.add_row(std::move(row), RowSense::LessEqual, std::floor(total / 2.0),
                  "cap" + std::to_string(i));
  }
  g.witness = Assignment(model, std::vector<double>(size.n, 0.0));
  return g;
}

// Unweighted-row set cover; each element lies in at least two sets when n >= 2.
GeneratedInstance set_cover(InstanceSize size, Rng& rng) {
  GeneratedInstance g;
  MipModel& model = g.model;
  for (int j = 0; j < size.n; ++j)
    model.add_variable(static_cast<double>(rng.uniform_int(1, 20)), 0.0, 1.0, true);
  std::vector<int> sets(size.n);
  std::iota(sets.begin(), sets.end(), 0);
  const int max_cover = std::max(2, size.n / 4);
  for (int i = 0; i < size.m; ++i) {
    const int cover = std::min<int>(size.n, static_cast<int>(rng.uniform_int(2, max_cover)));
    // partial Fisher-Yates
    for (int k = 0; k < cover; ++k) {
      const auto pick = static_cast<int>(rng.uniform_int(k, size.n - 1));
      std::swap(sets[k], sets[pick]);
    }
    SparseRow row;
    for (int k = 0; k < cover; ++k) row.push_back({sets[k], 1.0});
    model.add_row(std::move(row), RowSense::GreaterEqual, 1.0, "cover" + std::to_string(i));
  }
  g.witness = Assignment(model, std::vector<double>(size.n, 1.0));
  return g;
}

// Generalized assignment: x[j*m + a] = 1 iff job j goes to agent a.
GeneratedInstance gap(InstanceSize size, Rng& rng) {
  GeneratedInstance g;
  MipModel& model = g.model;
  const int jobs = size.n;
  const int agents = size.m;
  std::vector<double> weight(static_cast<std::size_t>(jobs) * agents);
  for (int j = 0; j < jobs; ++j)
    for (int a = 0; a < agents; ++a) {
      model.add_variable(static_cast<double>(rng.uniform_int(5, 50)), 0.0, 1.0, true,
                         "x" + std::to_string(j) + "_" + std::to_string(a));
      weight[j * agents + a] = static_cast<double>(rng.uniform_int(5, 25));
    }
  std::vector<double> planted(weight.size(), 0.0);
  std::vector<double> load(agents, 0.0);
  for (int j = 0; j < jobs; ++j) {
    const auto a = static_cast<int>(rng.uniform_int(0, agents - 1));
    planted[j * agents + a] = 1.0;
    load[a] += weight[j * agents + a];
  }
  for (int j = 0; j < jobs; ++j) {
    SparseRow row;
    for (int a = 0; a < agents; ++a) row.push_back({j * agents + a, 1.0});
    model.add_row(std::move(row), RowSense::Equal, 1.0, "assign" + std::to_string(j));
  }
  for (int a = 0; a < agents; ++a) {
    SparseRow row;
    for (int j = 0; j < jobs; ++j) row.push_back({j * agents + a, weight[j * agents + a]});
    model.add_row(std::move(row), RowSense::LessEqual,
                  load[a] + static_cast<double>(rng.uniform_int(0, 15)),
                  "cap" + std::to_string(a));
  }
  g.witness = Assignment(model, std::move(planted));
  return g;
}

}  // namespace

GeneratedInstance generate_with_witness(Family family, InstanceSize size,
                                        std::uint64_t seed) {
  if (size.n < 1 || size.m < 1) throw std::invalid_argument("instance size must be at least 1x1");
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(family)));
  GeneratedInstance g;
  switch (family) {
    case Family::Knapsack: g = knapsack(size, rng); break;
    case Family::SetCover: g = set_cover(size, rng); break;
    case Family::Gap: g = gap(size, rng); break;
  }
  g.model.name = instance_name(family, size, seed);
  return g;
}

MipModel generate_instance(Family family, InstanceSize size, std::uint64_t seed) {
  return generate_with_witness(family, size, seed).model;
}

}  // namespace mipsched
