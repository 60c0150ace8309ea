// AVX2+FMA lane. This translation unit is compiled with -mavx2 -mfma and only
// entered after a runtime __builtin_cpu_supports check, so it is safe to ship
// in a generic binary.

#include "turnpike/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace turnpike::kernels::detail {

bool cpu_supports_avx2_fma() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void xpay_avx2(const double* x, double a, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_fmadd_pd(va, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void stencil_apply_avx2(const Stencil& s, double alpha, double beta, const double* x, double* y) {
  const __m256d valpha = _mm256_set1_pd(alpha);
  const __m256d vbeta = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= s.n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int k = 0; k < 4; ++k) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(s.nb[k] + i));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(s.w[k] + i), xv, acc);
    }
    const __m256d r = _mm256_fmadd_pd(vbeta, acc,
                                      _mm256_mul_pd(valpha, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < s.n; ++i) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) acc += s.w[k][i] * x[s.nb[k][i]];
    y[i] = alpha * x[i] + beta * acc;
  }
}

}  // namespace

const Ops avx2_ops = {"avx2", dot_avx2, axpy_avx2, xpay_avx2, stencil_apply_avx2};

}  // namespace turnpike::kernels::detail

#endif  // x86-64
