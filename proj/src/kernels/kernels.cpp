#include "turnpike/kernels.hpp"

#include <atomic>
#include <cstdlib>

#include "turnpike/errors.hpp"
#include "turnpike/log.hpp"

namespace turnpike::kernels {

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

Backend backend_from_name(const std::string& name) {
  if (name == "scalar") return Backend::scalar;
  if (name == "avx2") return Backend::avx2;
  if (name == "neon") return Backend::neon;
  throw Error("unknown kernel backend '" + name + "' (expected scalar|avx2|neon)");
}

const Ops* ops_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &detail::scalar_ops;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      if (detail::cpu_supports_avx2_fma()) return &detail::avx2_ops;
#endif
      return nullptr;
    case Backend::neon:
#if defined(__aarch64__)
      return &detail::neon_ops;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> v{Backend::scalar};
  if (ops_for(Backend::avx2)) v.push_back(Backend::avx2);
  if (ops_for(Backend::neon)) v.push_back(Backend::neon);
  return v;
}

namespace {

Backend default_backend() {
  if (const char* env = std::getenv("TURNPIKE_KERNELS")) {
    const Backend wanted = backend_from_name(env);
    if (ops_for(wanted)) return wanted;
    log_warn(std::string("TURNPIKE_KERNELS=") + env + " unavailable here, using scalar");
    return Backend::scalar;
  }
  if (ops_for(Backend::avx2)) return Backend::avx2;
  if (ops_for(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

std::atomic<const Ops*>& selected() {
  static std::atomic<const Ops*> current{ops_for(default_backend())};
  return current;
}

}  // namespace

const Ops& ops() { return *selected().load(std::memory_order_relaxed); }

Backend active_backend() { return backend_from_name(ops().name); }

void select_backend(Backend b) {
  const Ops* table = ops_for(b);
  if (table == nullptr)
    throw Error(std::string("kernel backend '") + backend_name(b) + "' is unavailable on this machine");
  selected().store(table, std::memory_order_relaxed);
}

}  // namespace turnpike::kernels
