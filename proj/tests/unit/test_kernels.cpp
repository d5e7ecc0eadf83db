#include <doctest.h>

#include <cmath>
#include <vector>

#include "otsclust/kernels.hpp"
#include "otsclust/rng.hpp"

using namespace otsclust;

namespace {

std::vector<double> random_vector(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (auto& e : v) e = rng.next_double() * 4.0 - 2.0;
  return v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference values") {
  const std::vector<double> a = {1.0, 2.0, 3.0};
  const std::vector<double> b = {0.5, 2.0, 5.0};
  CHECK(kernels::sum_sq_diff_scalar(a.data(), b.data(), 3) == doctest::Approx(0.25 + 4.0));
  CHECK(kernels::dot_scalar(a.data(), b.data(), 3) == doctest::Approx(0.5 + 4.0 + 15.0));
  CHECK(kernels::sum_sq_diff_scalar(a.data(), b.data(), 0) == 0.0);
}

TEST_CASE("active backend matches the scalar reference on every length") {
  // Lengths sweep past the vector width and remainder-handling edges.
  Rng rng(12345);
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    const double ssd_scalar = kernels::sum_sq_diff_scalar(a.data(), b.data(), n);
    const double dot_scalar = kernels::dot_scalar(a.data(), b.data(), n);
    const double ssd_active = kernels::sum_sq_diff(a, b);
    const double dot_active = kernels::dot(a, b);
    CHECK(ssd_active == doctest::Approx(ssd_scalar).epsilon(1e-12));
    CHECK(dot_active == doctest::Approx(dot_scalar).epsilon(1e-12));
  }
}

TEST_CASE("simd backend equivalence on large random blocks") {
  const bool has_simd = kernels::backend_supported(kernels::Backend::avx2) ||
                        kernels::backend_supported(kernels::Backend::neon);
  if (!has_simd) {
    MESSAGE("no SIMD backend on this CPU; dispatch stays scalar");
    CHECK(kernels::active_backend() == "scalar");
    return;
  }

  const auto simd = kernels::backend_supported(kernels::Backend::avx2)
                        ? kernels::Backend::avx2
                        : kernels::Backend::neon;
  Rng rng(777);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 1 + rng.uniform_int(4096);
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);

    kernels::use_backend(simd);
    const double ssd_simd = kernels::sum_sq_diff(a, b);
    const double dot_simd = kernels::dot(a, b);
    kernels::use_backend(kernels::Backend::scalar);
    const double ssd_ref = kernels::sum_sq_diff(a, b);
    const double dot_ref = kernels::dot(a, b);
    kernels::use_backend(simd);

    CHECK(ssd_simd == doctest::Approx(ssd_ref).epsilon(1e-12));
    CHECK(dot_simd == doctest::Approx(dot_ref).epsilon(1e-12));
  }
}

TEST_CASE("unsupported backend selection is rejected") {
#if defined(__x86_64__) || defined(_M_X64)
  CHECK_THROWS(kernels::use_backend(kernels::Backend::neon));
#else
  CHECK_THROWS(kernels::use_backend(kernels::Backend::avx2));
#endif
}

}  // TEST_SUITE
