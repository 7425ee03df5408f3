#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "m2m/mc/kernels.hpp"
#include "m2m/mc/rng.hpp"

using namespace m2m::mc;

namespace {

struct Arrays {
  std::vector<double> x, y, p;
};

Arrays random_arrays(std::size_t n, uint64_t seed) {
  Xoshiro256pp rng(seed);
  Arrays a;
  a.x.resize(n);
  a.y.resize(n);
  a.p.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.x[i] = (rng.uniform() - 0.5) * 5.0;
    a.y[i] = (rng.uniform() - 0.5) * 5.0;
    a.p[i] = rng.uniform() * 10.0 + 1e-3;
  }
  return a;
}

}  // namespace

TEST_CASE("dispatched alpha=4 kernel is bit-identical to the scalar reference") {
  MESSAGE("pair_weights backend: ", pair_weights_backend());
  for (std::size_t n : {0UL, 1UL, 3UL, 4UL, 7UL, 64UL, 1001UL}) {
    const auto a = random_arrays(n, 42 + n);
    std::vector<double> w_ref(n), w_disp(n);
    pair_weights_scalar_a4(a.x.data(), a.y.data(), a.p.data(), n, 0.3, -0.7,
                           w_ref.data());
    pair_weights(a.x.data(), a.y.data(), a.p.data(), n, 0.3, -0.7, 4.0, w_disp.data());
    CHECK(std::memcmp(w_ref.data(), w_disp.data(), n * sizeof(double)) == 0);
  }
}

#if defined(__x86_64__)
TEST_CASE("AVX2 variant agrees bitwise when the CPU supports it") {
  if (!__builtin_cpu_supports("avx2")) return;
  const auto a = random_arrays(517, 7);
  std::vector<double> w_ref(517), w_simd(517);
  pair_weights_scalar_a4(a.x.data(), a.y.data(), a.p.data(), 517, -1.1, 2.2,
                         w_ref.data());
  pair_weights_avx2_a4(a.x.data(), a.y.data(), a.p.data(), 517, -1.1, 2.2,
                       w_simd.data());
  for (std::size_t i = 0; i < 517; ++i) CHECK(w_ref[i] == w_simd[i]);
}
#endif

TEST_CASE("generic-alpha path matches the fast path at alpha=4") {
  const auto a = random_arrays(256, 11);
  std::vector<double> w4(256), wg(256);
  pair_weights_scalar_a4(a.x.data(), a.y.data(), a.p.data(), 256, 0.0, 0.0, w4.data());
  pair_weights_generic(a.x.data(), a.y.data(), a.p.data(), 256, 0.0, 0.0, 4.0,
                       wg.data());
  for (std::size_t i = 0; i < 256; ++i) {
    const double rel = std::fabs(w4[i] - wg[i]) / wg[i];
    CHECK(rel < 1e-13);
  }
}

TEST_CASE("generic path implements p * d^-alpha") {
  std::vector<double> x = {3.0}, y = {4.0}, p = {7.0}, w(1);
  pair_weights(x.data(), y.data(), p.data(), 1, 0.0, 0.0, 3.0, w.data());
  CHECK(w[0] == doctest::Approx(7.0 / 125.0).epsilon(1e-14));  // d = 5
}
