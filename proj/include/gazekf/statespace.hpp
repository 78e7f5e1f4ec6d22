#pragma once

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gazekf {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kSymmetryTolerance = 1e-9;
inline constexpr double kPsdTolerance = 1e-9;

/// Gaussian belief over the hidden state.
struct StateEstimate {
  Vec mean;
  Mat cov;
};

bool all_finite(const Vec& v);
bool all_finite(const Mat& m);

/// Largest |A(i,j) - A(j,i)|.
double max_asymmetry(const Mat& m);

/// (A + A^T) / 2
Mat symmetrized(const Mat& m);

/// Smallest eigenvalue of the symmetric part of a square matrix.
double min_eigenvalue(const Mat& m);

bool is_symmetric_psd(const Mat& m, double tol = kPsdTolerance);

/// Describes x_t = f(x_{t-1}) + w_t, w_t ~ N(0, Q).
///
/// `f` and `jacobian` must be pure: the filter may call them any number of
/// times and from several threads.
class ProcessModel {
 public:
  using Transition = std::function<Vec(const Vec&)>;
  using Jacobian = std::function<Mat(const Vec&)>;

  /// Throws ConfigError when q is not square, symmetric PSD, or dt <= 0.
  ProcessModel(std::string name, Transition f, Jacobian jacobian, Mat q, double dt);

  const std::string& name() const noexcept { return name_; }
  Eigen::Index dim() const noexcept { return q_.rows(); }
  double dt() const noexcept { return dt_; }
  const Mat& q() const noexcept { return q_; }

  Vec f(const Vec& x) const { return f_(x); }
  Mat jacobian(const Vec& x) const { return jacobian_(x); }
  const Transition& transition_fn() const noexcept { return f_; }

 private:
  std::string name_;
  Transition f_;
  Jacobian jacobian_;
  Mat q_;
  double dt_;
};

/// Describes z_t = h(x_t) + v_t, v_t ~ N(0, R).
class MeasurementModel {
 public:
  using Observation = std::function<Vec(const Vec&)>;
  using Jacobian = std::function<Mat(const Vec&)>;

  /// Throws ConfigError when r is not square and symmetric, or state_dim < 1.
  /// Positive definiteness of r is left to the gain computation, which
  /// reports a singular innovation covariance as a NumericError.
  MeasurementModel(std::string name, Observation h, Jacobian jacobian, Mat r,
                   Eigen::Index state_dim);

  const std::string& name() const noexcept { return name_; }
  Eigen::Index dim() const noexcept { return r_.rows(); }
  Eigen::Index state_dim() const noexcept { return state_dim_; }
  const Mat& r() const noexcept { return r_; }

  Vec h(const Vec& x) const { return h_(x); }
  Mat jacobian(const Vec& x) const { return jacobian_(x); }
  const Observation& observation_fn() const noexcept { return h_; }

 private:
  std::string name_;
  Observation h_;
  Jacobian jacobian_;
  Mat r_;
  Eigen::Index state_dim_;
};

/// State [p, v]; f([p, v]) = [p + v dt, v], Q = q_scale I.
ProcessModel make_constant_velocity_model(double dt, double q_scale);

/// State [p, v]; f([p, v]) = [p + v dt, v - sin(p) dt], Q = q_scale I.
ProcessModel make_pendulum_model(double dt, double q_scale);

/// h(x) = x on an m-dimensional state, R = r_scale I.
MeasurementModel make_identity_measurement(int m, double r_scale);

/// One sample of a measurement stream. An absent `z` is a dropout (blink).
struct TimedSample {
  double t = 0.0;
  std::optional<Vec> z;
};

struct TimedSeries {
  std::vector<TimedSample> samples;
  std::vector<std::string> channel_names;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  std::size_t missing_count() const noexcept;
};

}  // namespace gazekf
