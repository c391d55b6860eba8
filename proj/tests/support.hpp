#pragma once

#include <string>
#include <vector>

#include "mipsched/generate.hpp"
#include "mipsched/rng.hpp"

namespace support {

/// Generated instances with at most 14 binaries: knapsack, set cover and
/// GAP in rotation, sizes drawn from `seed`.
inline std::vector<std::string> small_binary_suite(int count, std::uint64_t seed) {
  mipsched::Rng rng(seed);
  static const int gap_sizes[][2] = {{3, 3}, {4, 3}, {5, 2}, {7, 2}, {4, 2}, {6, 2}, {3, 4}};
  std::vector<std::string> out;
  for (int k = 0; k < count; ++k) {
    int n = 0, m = 0;
    std::string fam;
    switch (k % 3) {
      case 0:
        fam = "knapsack";
        n = static_cast<int>(rng.uniform_int(6, 14));
        m = static_cast<int>(rng.uniform_int(1, 3));
        break;
      case 1:
        fam = "set_cover";
        n = static_cast<int>(rng.uniform_int(6, 14));
        m = static_cast<int>(rng.uniform_int(3, 10));
        break;
      default: {
        fam = "gap";
        const auto& s = gap_sizes[rng.uniform_int(0, 6)];
        n = s[0];
        m = s[1];
      }
    }
    const auto inst_seed = rng.uniform_int(1, 1000000);
    out.push_back("gen:" + fam + ":n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                  ",seed=" + std::to_string(inst_seed));
  }
  return out;
}

}  // namespace support
