#pragma once

#include <cstdint>
#include <vector>

#include "gazekf/gazeio.hpp"

namespace gazekf {

struct SampleTraceConfig {
  int n = 500;
  double rate_hz = 60.0;
  double noise_px = 8.0;
  int blink_count = 4;
  int blink_length = 6;
  double screen_width = 1920.0;
  double screen_height = 1080.0;
  std::uint64_t seed = 7;
};

/// Gaze-like test trace: fixations on random screen targets joined by short
/// smoothstep saccades, slow drift within each fixation, Gaussian sensor
/// noise, and `blink_count` non-overlapping blinks of `blink_length` samples.
/// Blinks never cover the first or last two samples, so the trace always has
/// exactly blink_count * blink_length blink rows.
std::vector<GazeSample> generate_sample_trace(const SampleTraceConfig& config = {});

}  // namespace gazekf
