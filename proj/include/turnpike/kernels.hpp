#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace turnpike::kernels {

/// Per-dof 4-neighbor topology in struct-of-arrays form. Absent neighbors
/// point at the dof itself with weight 0, so every lane does the same work.
struct Stencil {
  std::size_t n = 0;
  const std::int32_t* nb[4] = {nullptr, nullptr, nullptr, nullptr};
  const double* w[4] = {nullptr, nullptr, nullptr, nullptr};
};

/// The vector kernels backing the linear solvers. All backends implement the
/// same contract; results may differ by floating-point reassociation only.
struct Ops {
  const char* name;
  // sum x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y = x + a * y
  void (*xpay)(const double* x, double a, double* y, std::size_t n);
  // y[i] = alpha * x[i] + beta * sum_k w[k][i] * x[nb[k][i]]
  void (*stencil_apply)(const Stencil& s, double alpha, double beta, const double* x, double* y);
};

enum class Backend { scalar = 0, avx2 = 1, neon = 2 };

const char* backend_name(Backend b);
Backend backend_from_name(const std::string& name);

/// Backends compiled in and usable on this machine (scalar always included).
std::vector<Backend> available_backends();

/// Table for one backend; null if unavailable on this host.
const Ops* ops_for(Backend b);

/// The selected table. Defaults to the widest available backend; the
/// TURNPIKE_KERNELS environment variable (scalar|avx2|neon) overrides.
const Ops& ops();

Backend active_backend();

/// Select a backend explicitly; throws turnpike::Error if unavailable.
void select_backend(Backend b);

namespace detail {
extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
bool cpu_supports_avx2_fma();
#endif
#if defined(__aarch64__)
extern const Ops neon_ops;
#endif
}  // namespace detail

}  // namespace turnpike::kernels
