#include "gazekf/kernels/kernels.hpp"

namespace gazekf::kernels::scalar {

SumSq masked_sum_sq_diff(const double* a, const double* b, const std::uint8_t* mask,
                         std::size_t n) noexcept {
  SumSq out;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i] != 0) {
      const double d = a[i] - b[i];
      out.sum += d * d;
      ++out.count;
    }
  }
  return out;
}

}  // namespace gazekf::kernels::scalar
