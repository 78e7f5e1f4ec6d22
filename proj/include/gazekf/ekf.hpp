#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gazekf/statespace.hpp"

namespace gazekf {

struct FilterConfig {
  Vec x0;
  Mat p0;
  ProcessModel process;
  MeasurementModel measurement;

  /// Throws ConfigError when dimensions disagree or p0 is not symmetric PSD.
  void validate() const;
};

inline constexpr double kDefaultInitialVariance = 10.0;

/// Builds a config whose initial mean is the first present measurement mapped
/// back through the pseudo-inverse of h's Jacobian at the origin (for an
/// identity h this is z_0 itself; unobserved components start at 0), with
/// P0 = p0_scale I. Throws ConfigError when the series has no measurement.
FilterConfig default_filter_config(const TimedSeries& series, ProcessModel process,
                                   MeasurementModel measurement,
                                   double p0_scale = kDefaultInitialVariance);

struct UpdateResult {
  StateEstimate posterior;
  Vec innovation;
  Mat gain;
};

/// Everything one filter step produced. When `updated` is false the
/// innovation and gain are empty and posterior equals prior.
struct StepRecord {
  double t = 0.0;
  StateEstimate prior;
  StateEstimate posterior;
  std::optional<Vec> innovation;
  std::optional<Mat> gain;
  bool updated = false;
};

/// Mean through f, covariance F P F^T + Q with F the Jacobian at the input
/// mean. Throws NumericError if f or F produce non-finite values.
StateEstimate predict(const StateEstimate& state, const ProcessModel& model);

/// Kalman gain K = P H^T S^-1 with S = H P H^T + R, H evaluated at the
/// predicted mean. Posterior covariance is (I - K H) P, symmetrized.
/// Throws NumericError when S is singular at working precision.
UpdateResult update(const StateEstimate& state, const MeasurementModel& model, const Vec& z);

/// Predict, then update if `z` is present. A missing measurement leaves the
/// prediction as the posterior.
StepRecord step(const StateEstimate& state, const FilterConfig& config,
                const std::optional<Vec>& z, double t);

/// Runs the filter over every sample, starting from (x0, p0).
/// Throws ConfigError for non-increasing timestamps; step failures are
/// rethrown as NumericError with the sample index attached.
std::vector<StepRecord> run_filter(const TimedSeries& series, const FilterConfig& config);

/// Central-difference Jacobian: column i is (fn(x + eps e_i) - fn(x - eps e_i)) / (2 eps).
Mat numerical_jacobian(const std::function<Vec(const Vec&)>& fn, const Vec& x, double eps);

/// Innovation covariance H P H^T + R at the given belief.
Mat innovation_covariance(const StateEstimate& state, const MeasurementModel& model);

/// Solves S X = B for symmetric positive definite S. Throws NumericError
/// when S is not positive definite or its reciprocal condition number is
/// below machine epsilon.
Mat solve_spd(const Mat& s, const Mat& b);

}  // namespace gazekf
