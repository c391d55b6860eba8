#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mipsched/model.hpp"

namespace mipsched {

enum class Family { Knapsack, SetCover, Gap };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

struct InstanceSize {
  int n = 1;
  int m = 1;
};

struct GeneratedInstance {
  MipModel model;
  /// Feasible point known by construction.
  Assignment witness;
};

/// knapsack: n items, m capacity rows, maximize profit (stored negated).
/// set_cover: n sets, m elements, every element covered at least twice.
/// gap: n jobs, m agents, capacities built around a planted assignment.
GeneratedInstance generate_with_witness(Family family, InstanceSize size,
                                        std::uint64_t seed);

MipModel generate_instance(Family family, InstanceSize size,
                           std::uint64_t seed);

/// Loads `gen:<family>:n=..,m=..,seed=..` or an MPS file path.
/// Throws std::runtime_error (or MpsError) on failure.
MipModel load_instance(const std::string& uri);

}  // namespace mipsched
