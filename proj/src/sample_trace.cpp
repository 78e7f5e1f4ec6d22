#include "gazekf/sample_trace.hpp"

#include <algorithm>

#include "gazekf/error.hpp"
#include "gazekf/random.hpp"

namespace gazekf {

namespace {

double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }

}  // namespace

std::vector<GazeSample> generate_sample_trace(const SampleTraceConfig& config) {
  if (config.n < 5 || !(config.rate_hz > 0.0) || config.blink_count < 0 ||
      config.blink_length < 1) {
    throw ConfigError("sample trace: invalid configuration");
  }
  const auto n = static_cast<std::size_t>(config.n);
  const auto blink_len = static_cast<std::size_t>(config.blink_length);
  const auto blinks = static_cast<std::size_t>(config.blink_count);
  // Each blink needs its own slot plus one clear sample on either side.
  if (blinks * (blink_len + 1) + 4 > n) {
    throw ConfigError("sample trace: too many blinks for the trace length");
  }

  Rng rng(config.seed);
  const double dt = 1.0 / config.rate_hz;
  const double margin = 100.0;

  std::vector<double> xs(n);
  std::vector<double> ys(n);
  double fx = rng.uniform(margin, config.screen_width - margin);
  double fy = rng.uniform(margin, config.screen_height - margin);
  std::size_t k = 0;
  while (k < n) {
    // Fixation of 0.25-0.6 s with a slow random-walk drift.
    const auto fix_len = static_cast<std::size_t>(rng.uniform(0.25, 0.6) * config.rate_hz);
    double dx = 0.0;
    double dy = 0.0;
    for (std::size_t i = 0; i < fix_len && k < n; ++i, ++k) {
      dx += rng.gaussian(0.0, 0.5);
      dy += rng.gaussian(0.0, 0.5);
      xs[k] = fx + dx;
      ys[k] = fy + dy;
    }
    // Saccade of 30-60 ms to the next target.
    const double sx = fx + dx;
    const double sy = fy + dy;
    fx = rng.uniform(margin, config.screen_width - margin);
    fy = rng.uniform(margin, config.screen_height - margin);
    const auto sac_len = std::max<std::size_t>(
        2, static_cast<std::size_t>(rng.uniform(0.03, 0.06) * config.rate_hz));
    for (std::size_t i = 1; i <= sac_len && k < n; ++i, ++k) {
      const double u = smoothstep(static_cast<double>(i) / static_cast<double>(sac_len));
      xs[k] = sx + (fx - sx) * u;
      ys[k] = sy + (fy - sy) * u;
    }
  }

  // Blink starts: split the interior into equal slots, one blink per slot.
  std::vector<bool> blink(n, false);
  if (blinks > 0) {
    const std::size_t interior = n - 4;
    const std::size_t slot = interior / blinks;
    for (std::size_t b = 0; b < blinks; ++b) {
      const std::size_t room = slot - blink_len;  // >= 1 by the size check
      const std::size_t start = 2 + b * slot + static_cast<std::size_t>(rng.below(room));
      for (std::size_t i = 0; i < blink_len; ++i) {
        blink[start + i] = true;
      }
    }
  }

  std::vector<GazeSample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double nx = rng.gaussian(0.0, config.noise_px);
    const double ny = rng.gaussian(0.0, config.noise_px);
    samples.push_back(blink[i] ? GazeSample::blink_at(t) : GazeSample::at(t, xs[i] + nx, ys[i] + ny));
  }
  return samples;
}

}  // namespace gazekf
