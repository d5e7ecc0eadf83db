#include "otsclust/kernels.hpp"

#include "otsclust/core.hpp"

namespace otsclust::kernels {

double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

// Definitions must precede the dispatch initializer below; both are
// rebound before main() runs.
PairReduceFn sum_sq_diff_impl = &sum_sq_diff_scalar;
PairReduceFn dot_impl = &dot_scalar;

namespace {

Backend detect_backend() {
#if defined(__aarch64__) || defined(_M_ARM64)
  return Backend::neon;
#elif defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Backend::avx2;
  return Backend::scalar;
#else
  return Backend::scalar;
#endif
}

Backend g_active = Backend::scalar;

void bind(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      sum_sq_diff_impl = &sum_sq_diff_scalar;
      dot_impl = &dot_scalar;
      break;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      sum_sq_diff_impl = &sum_sq_diff_avx2;
      dot_impl = &dot_avx2;
      break;
#else
      raise(Errc::config_error, "avx2 backend not compiled in");
#endif
    case Backend::neon:
#if defined(__aarch64__) || defined(_M_ARM64)
      sum_sq_diff_impl = &sum_sq_diff_neon;
      dot_impl = &dot_neon;
      break;
#else
      raise(Errc::config_error, "neon backend not compiled in");
#endif
  }
  g_active = backend;
}

struct DispatchInit {
  DispatchInit() { bind(detect_backend()); }
};

const DispatchInit g_init{};

}  // namespace

std::string active_backend() {
  switch (g_active) {
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    default: return "scalar";
  }
}

bool backend_supported(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::neon:
#if defined(__aarch64__) || defined(_M_ARM64)
      return true;
#else
      return false;
#endif
  }
  return false;
}

void use_backend(Backend backend) {
  if (!backend_supported(backend))
    raise(Errc::config_error, "requested kernel backend is not supported on this CPU");
  bind(backend);
}

}  // namespace otsclust::kernels
