#include "mipsched/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace mipsched::kernels::avx2 {

// Separate multiply and subtract: matches the scalar rounding exactly.
__attribute__((target("avx2"))) void sub_scaled(double* y, const double* x, double a,
                                                std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d x0 = _mm256_loadu_pd(x + i);
    __m256d x1 = _mm256_loadu_pd(x + i + 4);
    __m256d y0 = _mm256_loadu_pd(y + i);
    __m256d y1 = _mm256_loadu_pd(y + i + 4);
    y0 = _mm256_sub_pd(y0, _mm256_mul_pd(va, x0));
    y1 = _mm256_sub_pd(y1, _mm256_mul_pd(va, x1));
    _mm256_storeu_pd(y + i, y0);
    _mm256_storeu_pd(y + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d x0 = _mm256_loadu_pd(x + i);
    __m256d y0 = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_sub_pd(y0, _mm256_mul_pd(va, x0)));
  }
  for (; i < n; ++i) {
    const double t = a * x[i];
    y[i] = y[i] - t;
  }
}

__attribute__((target("avx2"))) void scale(double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
  for (; i < n; ++i) x[i] *= a;
}

}  // namespace mipsched::kernels::avx2
#endif
