// NEON lane for aarch64. NEON is baseline on that architecture, so there is
// no runtime feature check; gathers are emulated with scalar lane loads.

#include "turnpike/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace turnpike::kernels::detail {

namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void xpay_neon(const double* x, double a, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(x + i), va, vld1q_f64(y + i)));
  for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void stencil_apply_neon(const Stencil& s, double alpha, double beta, const double* x, double* y) {
  const float64x2_t valpha = vdupq_n_f64(alpha);
  const float64x2_t vbeta = vdupq_n_f64(beta);
  std::size_t i = 0;
  for (; i + 2 <= s.n; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (int k = 0; k < 4; ++k) {
      float64x2_t xv = vdupq_n_f64(0.0);
      xv = vsetq_lane_f64(x[s.nb[k][i]], xv, 0);
      xv = vsetq_lane_f64(x[s.nb[k][i + 1]], xv, 1);
      acc = vfmaq_f64(acc, vld1q_f64(s.w[k] + i), xv);
    }
    vst1q_f64(y + i, vfmaq_f64(vmulq_f64(valpha, vld1q_f64(x + i)), vbeta, acc));
  }
  for (; i < s.n; ++i) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) acc += s.w[k][i] * x[s.nb[k][i]];
    y[i] = alpha * x[i] + beta * acc;
  }
}

}  // namespace

const Ops neon_ops = {"neon", dot_neon, axpy_neon, xpay_neon, stencil_apply_neon};

}  // namespace turnpike::kernels::detail

#endif  // __aarch64__
