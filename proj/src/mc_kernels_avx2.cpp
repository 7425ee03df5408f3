#if defined(__x86_64__)

#include <immintrin.h>

#include "m2m/mc/kernels.hpp"

namespace m2m::mc {

// AVX2 lanes perform the same IEEE mul/div sequence as the scalar reference,
// so results match it bit for bit.
void pair_weights_avx2_a4(const double* xs, const double* ys, const double* ps,
                          std::size_t n, double qx, double qy, double* w) {
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vqx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vqy);
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d d4 = _mm256_mul_pd(d2, d2);
    _mm256_storeu_pd(w + i, _mm256_div_pd(_mm256_loadu_pd(ps + i), d4));
  }
  if (i < n) pair_weights_scalar_a4(xs + i, ys + i, ps + i, n - i, qx, qy, w + i);
}

}  // namespace m2m::mc

#endif
