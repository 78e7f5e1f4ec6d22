// Variant selection only; no intrinsics in this file.

#include <atomic>
#include <string>

#include "gazekf/error.hpp"
#include "gazekf/kernels/kernels.hpp"

namespace gazekf::kernels {

namespace {

// Below this many elements the scalar loop is as fast as any vector variant.
constexpr std::size_t kMinVectorLength = 16;

constexpr int kAuto = -1;
std::atomic<int> forced{kAuto};

bool cpu_has_avx2() noexcept {
#if defined(GAZEKF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return has;
#else
  return false;
#endif
}

Isa detect() noexcept {
  if (isa_available(Isa::avx2)) {
    return Isa::avx2;
  }
  if (isa_available(Isa::neon)) {
    return Isa::neon;
  }
  return Isa::scalar;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
    case Isa::neon:
#if defined(GAZEKF_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept {
  static const Isa best = detect();
  const int f = forced.load(std::memory_order_relaxed);
  if (f == kAuto) {
    return best;
  }
  const auto isa = static_cast<Isa>(f);
  return isa_available(isa) ? isa : Isa::scalar;
}

void force_isa(std::optional<Isa> isa) noexcept {
  forced.store(isa ? static_cast<int>(*isa) : kAuto, std::memory_order_relaxed);
}

SumSq masked_sum_sq_diff(std::span<const double> a, std::span<const double> b,
                         std::span<const std::uint8_t> mask) {
  if (a.size() != b.size() || a.size() != mask.size()) {
    throw ConfigError("masked_sum_sq_diff: spans differ in length (" + std::to_string(a.size()) +
                      ", " + std::to_string(b.size()) + ", " + std::to_string(mask.size()) + ")");
  }
  const std::size_t n = a.size();
  const Isa isa = n < kMinVectorLength ? Isa::scalar : active_isa();
  switch (isa) {
#if defined(GAZEKF_HAVE_AVX2)
    case Isa::avx2:
      return avx2::masked_sum_sq_diff(a.data(), b.data(), mask.data(), n);
#endif
#if defined(GAZEKF_HAVE_NEON)
    case Isa::neon:
      return neon::masked_sum_sq_diff(a.data(), b.data(), mask.data(), n);
#endif
    default:
      return scalar::masked_sum_sq_diff(a.data(), b.data(), mask.data(), n);
  }
}

}  // namespace gazekf::kernels
