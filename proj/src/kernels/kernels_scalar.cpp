// Reference kernels. Kept branch-free and simple; the SIMD lanes are
// equivalence-tested against these.

#include "turnpike/kernels.hpp"

namespace turnpike::kernels::detail {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay_scalar(const double* x, double a, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void stencil_apply_scalar(const Stencil& s, double alpha, double beta, const double* x,
                          double* y) {
  const std::int32_t* nb0 = s.nb[0];
  const std::int32_t* nb1 = s.nb[1];
  const std::int32_t* nb2 = s.nb[2];
  const std::int32_t* nb3 = s.nb[3];
  const double* w0 = s.w[0];
  const double* w1 = s.w[1];
  const double* w2 = s.w[2];
  const double* w3 = s.w[3];
  for (std::size_t i = 0; i < s.n; ++i) {
    const double acc = w0[i] * x[nb0[i]] + w1[i] * x[nb1[i]] + w2[i] * x[nb2[i]] +
                       w3[i] * x[nb3[i]];
    y[i] = alpha * x[i] + beta * acc;
  }
}

}  // namespace

const Ops scalar_ops = {"scalar", dot_scalar, axpy_scalar, xpay_scalar, stencil_apply_scalar};

}  // namespace turnpike::kernels::detail
