#pragma once

#include <cstddef>

namespace m2m::mc {

// Pair-weight kernel: w[i] = p[i] * d_i^(-alpha) with d_i the distance from
// transmitter i to the query point. The alpha == 4 case is the hot path of
// every interference sum and has a runtime-dispatched SIMD variant; the
// generic-alpha path stays scalar.

void pair_weights_scalar_a4(const double* xs, const double* ys, const double* ps,
                            std::size_t n, double qx, double qy, double* w);

void pair_weights_generic(const double* xs, const double* ys, const double* ps,
                          std::size_t n, double qx, double qy, double alpha, double* w);

#if defined(__x86_64__)
void pair_weights_avx2_a4(const double* xs, const double* ys, const double* ps,
                          std::size_t n, double qx, double qy, double* w);
#endif

/// Name of the backend selected at runtime for the alpha == 4 kernel.
const char* pair_weights_backend();

/// Dispatching entry point.
void pair_weights(const double* xs, const double* ys, const double* ps, std::size_t n,
                  double qx, double qy, double alpha, double* w);

}  // namespace m2m::mc
