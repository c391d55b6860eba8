#include "mipsched/kernels.hpp"

namespace mipsched::kernels::scalar {

void sub_scaled(double* y, const double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = a * x[i];
    y[i] = y[i] - t;
  }
}

void scale(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace mipsched::kernels::scalar
