#include <cstdlib>
#include <stdexcept>
#include <string>

#include "mipsched/kernels.hpp"

namespace mipsched::kernels {

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void sub_scaled(double* y, const double* x, double a, std::size_t n);
void scale(double* x, double a, std::size_t n);
}  // namespace avx2
#define MIPSCHED_HAVE_AVX2 1
#endif

#if defined(__aarch64__)
namespace neon {
void sub_scaled(double* y, const double* x, double a, std::size_t n);
void scale(double* x, double a, std::size_t n);
}  // namespace neon
#define MIPSCHED_HAVE_NEON 1
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::sub_scaled, &scalar::scale};
#ifdef MIPSCHED_HAVE_AVX2
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::sub_scaled, &avx2::scale};
#endif
#ifdef MIPSCHED_HAVE_NEON
constexpr KernelTable kNeon{Isa::Neon, &neon::sub_scaled, &neon::scale};
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#ifdef MIPSCHED_HAVE_AVX2
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#ifdef MIPSCHED_HAVE_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& choose() {
  const char* env = std::getenv("MIPSCHED_SIMD");
  if (env != nullptr && *env != '\0') {
    const std::string want(env);
    for (Isa isa : available_isas())
      if (isa_name(isa) == want) return table_for(isa);
    // unknown or unsupported request falls back to scalar
    return kScalar;
  }
  const auto isas = available_isas();
  return table_for(isas.back());
}

}  // namespace

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (cpu_supports(isa)) out.push_back(isa);
  return out;
}

const KernelTable& table_for(Isa isa) {
  if (!cpu_supports(isa))
    throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
  switch (isa) {
#ifdef MIPSCHED_HAVE_AVX2
    case Isa::Avx2: return kAvx2;
#endif
#ifdef MIPSCHED_HAVE_NEON
    case Isa::Neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& active() {
  static const KernelTable& table = choose();
  return table;
}

}  // namespace mipsched::kernels
