#include <arm_neon.h>

#include "courant/kernels.hpp"

namespace courant::kernels::neon {

bool available() { return true; }

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  const std::size_t n2 = n - n % 2;
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = c + i * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      const float64x2_t av = vdupq_n_f64(aip);
      const double* bp = b + p * n;
      std::size_t j = 0;
      for (; j < n2; j += 2) vst1q_f64(ci + j, vfmaq_f64(vld1q_f64(ci + j), av, vld1q_f64(bp + j)));
      for (; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

}  // namespace courant::kernels::neon
