#pragma once

#include <cstdint>
#include <random>

namespace gazekf {

/// Reproducible random stream: std::mt19937_64 (its output sequence is fixed
/// by the C++ standard) with hand-written uniform and Gaussian transforms,
/// because the std:: distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) from the top 53 bits of one engine draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, n). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via the Marsaglia polar method; the second variate of
  /// each accepted pair is cached for the next call.
  double gaussian();

  double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gazekf
