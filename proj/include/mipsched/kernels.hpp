#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace mipsched::kernels {

// Dense row kernels used by the simplex tableau. Every variant computes
// the same IEEE result element by element (no FMA, no reassociation), so
// switching ISA never changes a pivot sequence.

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// y[i] -= a * x[i]
using AxpyFn = void (*)(double* y, const double* x, double a, std::size_t n);
/// x[i] *= a
using ScaleFn = void (*)(double* x, double a, std::size_t n);

struct KernelTable {
  Isa isa;
  AxpyFn sub_scaled;
  ScaleFn scale;
};

namespace scalar {
void sub_scaled(double* y, const double* x, double a, std::size_t n);
void scale(double* x, double a, std::size_t n);
}  // namespace scalar

/// ISAs compiled in and supported by this CPU, scalar first.
std::vector<Isa> available_isas();

/// Table for a given ISA; throws std::invalid_argument if unavailable.
const KernelTable& table_for(Isa isa);

/// Best available table, unless MIPSCHED_SIMD=scalar|avx2|neon overrides.
const KernelTable& active();

inline void sub_scaled(std::span<double> y, std::span<const double> x, double a) {
  active().sub_scaled(y.data(), x.data(), a, y.size());
}

inline void scale(std::span<double> x, double a) {
  active().scale(x.data(), a, x.size());
}

}  // namespace mipsched::kernels
