#pragma once

// Every value the filters need that has no principled source lives here.
// docs/defaults.md explains each one; change both together.

#include <cstdint>

#include "gazekf/baselines.hpp"

namespace gazekf::defaults {

// Synthetic experiment.
inline constexpr int kSynthN = 100;
inline constexpr double kSynthDt = 1.0;
inline constexpr double kSynthSigma = 0.1;
inline constexpr std::uint64_t kSeed = 42;

// Sampling step at which the synthetic RMSE magnitudes are evaluated.
inline constexpr double kMagnitudeDt = 0.2;

// Filter tuning for the synthetic runs: Q = kSynthQScale I, R = sigma^2 I.
inline constexpr double kSynthQScale = 1e-2;
inline constexpr double kSynthRScale = 0.01;  // kSynthSigma^2

// Gaze runs: Q = kGazeQScale I in (px, px/s) units; R is the backward
// difference covariance built from a per-sample position variance of
// kGazeRScale px^2.
inline constexpr double kGazeQScale = 1e7;
inline constexpr double kGazeRScale = 64.0;

inline constexpr double kInitialVariance = 10.0;

inline constexpr int kSmaWindow = 5;
inline constexpr EdgePolicy kSmaEdgePolicy = EdgePolicy::partial;

inline constexpr int kBurnIn = 0;

}  // namespace gazekf::defaults
