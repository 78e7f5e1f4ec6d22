#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gazekf/statespace.hpp"

namespace gazekf {

struct SynthConfig {
  int n = 100;
  double dt = 1.0;
  double sigma_pos = 0.1;
  double sigma_vel = 0.1;
  std::uint64_t seed = 42;

  /// Throws ConfigError unless n >= 1, dt > 0 and both sigmas >= 0.
  void validate() const;
};

/// Sine position / cosine velocity truth sampled at t_k = k dt, plus the same
/// truth corrupted by independent Gaussian noise on each channel.
struct SynthDataset {
  std::vector<double> times;
  std::vector<Vec> truth;
  std::vector<Vec> noisy;

  std::size_t size() const noexcept { return times.size(); }
  /// The noisy column as a fully present measurement series.
  TimedSeries measurements() const;
};

/// Noise draws are taken in sample order, position before velocity, from
/// gazekf::Rng seeded with config.seed.
SynthDataset generate_synthetic(const SynthConfig& config);

/// CSV with header `t,pos_true,vel_true,pos_meas,vel_meas`.
void write_synth_csv(std::ostream& out, const SynthDataset& data);
SynthDataset read_synth_csv(std::istream& in);

}  // namespace gazekf
