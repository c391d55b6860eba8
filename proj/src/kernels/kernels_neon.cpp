#include "mipsched/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace mipsched::kernels::neon {

// vmulq + vsubq rather than vfmsq, to round like the scalar path.
void sub_scaled(double* y, const double* x, double a, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float64x2_t y0 = vld1q_f64(y + i);
    float64x2_t y1 = vld1q_f64(y + i + 2);
    y0 = vsubq_f64(y0, vmulq_f64(va, vld1q_f64(x + i)));
    y1 = vsubq_f64(y1, vmulq_f64(va, vld1q_f64(x + i + 2)));
    vst1q_f64(y + i, y0);
    vst1q_f64(y + i + 2, y1);
  }
  for (; i < n; ++i) {
    const double t = a * x[i];
    y[i] = y[i] - t;
  }
}

void scale(double* x, double a, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(vld1q_f64(x + i), va));
  for (; i < n; ++i) x[i] *= a;
}

}  // namespace mipsched::kernels::neon
#endif
