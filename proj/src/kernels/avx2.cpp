// Compiled with -mavx2; only reached through dispatch after a CPUID check.

#include <immintrin.h>

#include <cstring>

#include "gazekf/kernels/kernels.hpp"

namespace gazekf::kernels::avx2 {

namespace {

inline __m256d lane_mask(const std::uint8_t* mask) noexcept {
  std::int32_t bytes;
  std::memcpy(&bytes, mask, sizeof(bytes));
  const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(bytes));
  return _mm256_castsi256_pd(_mm256_cmpgt_epi64(wide, _mm256_setzero_si256()));
}

}  // namespace

SumSq masked_sum_sq_diff(const double* a, const double* b, const std::uint8_t* mask,
                         std::size_t n) noexcept {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_and_pd(_mm256_mul_pd(d0, d0), lane_mask(mask + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_and_pd(_mm256_mul_pd(d1, d1), lane_mask(mask + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc0 = _mm256_add_pd(acc0, _mm256_and_pd(_mm256_mul_pd(d0, d0), lane_mask(mask + i)));
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d half = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  double sum = _mm_cvtsd_f64(_mm_add_sd(half, _mm_unpackhi_pd(half, half)));

  for (std::size_t j = 0; j < i; ++j) {
    count += mask[j] != 0;
  }
  for (; i < n; ++i) {
    if (mask[i] != 0) {
      const double d = a[i] - b[i];
      sum += d * d;
      ++count;
    }
  }
  return {sum, count};
}

}  // namespace gazekf::kernels::avx2
