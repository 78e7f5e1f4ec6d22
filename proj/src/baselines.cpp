#include "gazekf/baselines.hpp"

#include <string>

#include "gazekf/error.hpp"

namespace gazekf {

std::string_view to_string(EdgePolicy policy) noexcept {
  return policy == EdgePolicy::hold ? "hold" : "partial";
}

EdgePolicy parse_edge_policy(std::string_view text) {
  if (text == "partial") {
    return EdgePolicy::partial;
  }
  if (text == "hold") {
    return EdgePolicy::hold;
  }
  throw ConfigError("unknown SMA edge policy '" + std::string(text) + "' (expected partial|hold)");
}

std::vector<Vec> sma_filter(const std::vector<std::optional<Vec>>& series, const SmaConfig& config) {
  if (config.window < 1) {
    throw ConfigError("SMA window must be >= 1, got " + std::to_string(config.window));
  }
  if (series.empty()) {
    throw ConfigError("SMA input series is empty");
  }
  Eigen::Index dim = -1;
  for (const auto& s : series) {
    if (!s) {
      continue;
    }
    if (dim < 0) {
      dim = s->size();
    } else if (s->size() != dim) {
      throw ConfigError("SMA input samples disagree in dimension");
    }
  }
  if (dim < 0) {
    throw ConfigError("SMA input series has no present sample");
  }

  const auto n = series.size();
  const auto w = static_cast<std::size_t>(config.window);
  std::vector<Vec> out(n);
  std::vector<bool> defined(n, false);

  // Running sum over the trailing window; re-summed from scratch every
  // window length to keep rounding drift bounded.
  Vec sum = Vec::Zero(dim);
  std::size_t count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (t % w == 0 && t >= w) {
      sum.setZero();
      count = 0;
      for (std::size_t i = t + 1 - w; i < t; ++i) {
        if (series[i]) {
          sum += *series[i];
          ++count;
        }
      }
    } else if (t >= w && series[t - w]) {
      sum -= *series[t - w];
      --count;
    }
    if (series[t]) {
      sum += *series[t];
      ++count;
    }
    if (count > 0) {
      out[t] = sum / static_cast<double>(count);
      defined[t] = true;
    } else if (t > 0 && defined[t - 1]) {
      out[t] = out[t - 1];
      defined[t] = true;
    }
  }

  std::size_t first = 0;
  while (!defined[first]) {
    ++first;
  }
  for (std::size_t t = 0; t < first; ++t) {
    out[t] = out[first];
  }

  if (config.edge_policy == EdgePolicy::hold && n >= w) {
    for (std::size_t t = 0; t + 1 < w; ++t) {
      out[t] = out[w - 1];
    }
  }
  return out;
}

}  // namespace gazekf
