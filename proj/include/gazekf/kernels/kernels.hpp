#pragma once

// Data-parallel reductions over long channel arrays. Every kernel has a
// scalar reference implementation; vector variants are picked at runtime
// from what the CPU reports and are tested for equivalence against it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace gazekf::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// Best available variant, unless overridden with force_isa().
Isa active_isa() noexcept;

/// Pins dispatch to one variant (tests, benchmarking). std::nullopt restores
/// automatic selection. Forcing an unavailable variant falls back to scalar.
void force_isa(std::optional<Isa> isa) noexcept;

struct SumSq {
  double sum = 0.0;
  std::size_t count = 0;
};

/// Sum of (a[i] - b[i])^2 over indices where mask[i] != 0, and how many such
/// indices there were. Values at masked-out indices are never read into the
/// sum, so they may be NaN. All three spans must have equal length.
SumSq masked_sum_sq_diff(std::span<const double> a, std::span<const double> b,
                         std::span<const std::uint8_t> mask);

namespace scalar {
SumSq masked_sum_sq_diff(const double* a, const double* b, const std::uint8_t* mask,
                         std::size_t n) noexcept;
}

namespace avx2 {
SumSq masked_sum_sq_diff(const double* a, const double* b, const std::uint8_t* mask,
                         std::size_t n) noexcept;
}

namespace neon {
SumSq masked_sum_sq_diff(const double* a, const double* b, const std::uint8_t* mask,
                         std::size_t n) noexcept;
}

}  // namespace gazekf::kernels
