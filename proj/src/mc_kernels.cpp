#include "m2m/mc/kernels.hpp"

#include <cmath>

namespace m2m::mc {

void pair_weights_scalar_a4(const double* xs, const double* ys, const double* ps,
                            std::size_t n, double qx, double qy, double* w) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    const double d2 = dx * dx + dy * dy;
    w[i] = ps[i] / (d2 * d2);
  }
}

void pair_weights_generic(const double* xs, const double* ys, const double* ps,
                          std::size_t n, double qx, double qy, double alpha, double* w) {
  const double half_alpha = -alpha / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    const double d2 = dx * dx + dy * dy;
    w[i] = ps[i] * std::pow(d2, half_alpha);
  }
}

namespace {

using KernelA4 = void (*)(const double*, const double*, const double*, std::size_t,
                          double, double, double*);

struct Dispatch {
  KernelA4 fn;
  const char* name;
};

Dispatch select_a4() {
#if defined(__x86_64__)
  if (__builtin_cpu_supports("avx2")) return {pair_weights_avx2_a4, "avx2"};
#endif
  return {pair_weights_scalar_a4, "scalar"};
}

const Dispatch kDispatch = select_a4();

}  // namespace

const char* pair_weights_backend() { return kDispatch.name; }

void pair_weights(const double* xs, const double* ys, const double* ps, std::size_t n,
                  double qx, double qy, double alpha, double* w) {
  if (alpha == 4.0) {
    kDispatch.fn(xs, ys, ps, n, qx, qy, w);
  } else {
    pair_weights_generic(xs, ys, ps, n, qx, qy, alpha, w);
  }
}

}  // namespace m2m::mc
