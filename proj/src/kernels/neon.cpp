#include <arm_neon.h>

#include "gazekf/kernels/kernels.hpp"

namespace gazekf::kernels::neon {

SumSq masked_sum_sq_diff(const double* a, const double* b, const std::uint8_t* mask,
                         std::size_t n) noexcept {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    const uint64x2_t m0 = {mask[i] ? ~0ULL : 0ULL, mask[i + 1] ? ~0ULL : 0ULL};
    const uint64x2_t m1 = {mask[i + 2] ? ~0ULL : 0ULL, mask[i + 3] ? ~0ULL : 0ULL};
    const uint64x2_t sq0 = vreinterpretq_u64_f64(vmulq_f64(d0, d0));
    const uint64x2_t sq1 = vreinterpretq_u64_f64(vmulq_f64(d1, d1));
    acc0 = vaddq_f64(acc0, vreinterpretq_f64_u64(vandq_u64(sq0, m0)));
    acc1 = vaddq_f64(acc1, vreinterpretq_f64_u64(vandq_u64(sq1, m1)));
    count += (mask[i] != 0) + (mask[i + 1] != 0) + (mask[i + 2] != 0) + (mask[i + 3] != 0);
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    if (mask[i] != 0) {
      const double d = a[i] - b[i];
      sum += d * d;
      ++count;
    }
  }
  return {sum, count};
}

}  // namespace gazekf::kernels::neon
