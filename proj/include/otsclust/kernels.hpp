#pragma once

// Arithmetic inner loops shared by the distance and clustering code:
// sum of squared differences between feature vectors and weighted sums
// against distance-matrix columns. Scalar reference implementations are
// always available; AVX2 (x86-64) and NEON (aarch64) variants are
// selected once at startup based on what the CPU reports.

#include <cstddef>
#include <span>
#include <string>

namespace otsclust::kernels {

// ---------------------------------------------------------------------------
// Scalar reference kernels
// ---------------------------------------------------------------------------

/// sum_i (a[i] - b[i])^2
double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n);

/// sum_i a[i] * b[i]
double dot_scalar(const double* a, const double* b, std::size_t n);

// ---------------------------------------------------------------------------
// SIMD variants (defined only when the translation unit is compiled)
// ---------------------------------------------------------------------------

#if defined(__x86_64__) || defined(_M_X64)
double sum_sq_diff_avx2(const double* a, const double* b, std::size_t n);
double dot_avx2(const double* a, const double* b, std::size_t n);
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
double sum_sq_diff_neon(const double* a, const double* b, std::size_t n);
double dot_neon(const double* a, const double* b, std::size_t n);
#endif

// ---------------------------------------------------------------------------
// Runtime dispatch
// ---------------------------------------------------------------------------

using PairReduceFn = double (*)(const double*, const double*, std::size_t);

/// Active implementations; bound to the best supported backend at load.
extern PairReduceFn sum_sq_diff_impl;
extern PairReduceFn dot_impl;

inline double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  return sum_sq_diff_impl(a.data(), b.data(), a.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return dot_impl(a.data(), b.data(), a.size());
}

enum class Backend { scalar, avx2, neon };

/// Name of the backend currently bound ("scalar", "avx2", "neon").
std::string active_backend();

/// True when the running CPU can execute the given backend.
bool backend_supported(Backend backend);

/// Rebind the dispatch pointers; throws Error(config_error) if unsupported.
void use_backend(Backend backend);

}  // namespace otsclust::kernels
