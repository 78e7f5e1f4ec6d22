#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "gazekf/statespace.hpp"

namespace gazekf {

/// How the leading edge (indices before the first full window) is filled.
enum class EdgePolicy {
  /// Average whatever prefix is available.
  partial,
  /// Repeat the first full-window mean (index window-1) over the leading edge.
  hold,
};

std::string_view to_string(EdgePolicy policy) noexcept;
/// Throws ConfigError for anything other than "partial" or "hold".
EdgePolicy parse_edge_policy(std::string_view text);

struct SmaConfig {
  int window = 5;
  EdgePolicy edge_policy = EdgePolicy::partial;
};

/// Trailing simple moving average, channel by channel.
///
/// Output has the input's length. Missing samples are left out of both the
/// sum and the count. A window with no present sample repeats the previous
/// output; windows of that kind at the very start take the first defined
/// output instead.
///
/// Throws ConfigError when the window is < 1, the series is empty or has no
/// present sample, or present samples disagree in dimension.
std::vector<Vec> sma_filter(const std::vector<std::optional<Vec>>& series, const SmaConfig& config);

}  // namespace gazekf
