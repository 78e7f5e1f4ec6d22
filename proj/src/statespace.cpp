#include "gazekf/statespace.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <utility>

#include "gazekf/error.hpp"

namespace gazekf {

bool all_finite(const Vec& v) { return v.allFinite(); }
bool all_finite(const Mat& m) { return m.allFinite(); }

double max_asymmetry(const Mat& m) {
  if (m.rows() != m.cols()) {
    throw ConfigError("max_asymmetry: matrix is not square");
  }
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

Mat symmetrized(const Mat& m) { return 0.5 * (m + m.transpose()); }

double min_eigenvalue(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ConfigError("min_eigenvalue: matrix is not square");
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(symmetrized(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_symmetric_psd(const Mat& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite()) {
    return false;
  }
  return max_asymmetry(m) <= kSymmetryTolerance * std::max(1.0, m.cwiseAbs().maxCoeff()) &&
         min_eigenvalue(m) >= -tol;
}

ProcessModel::ProcessModel(std::string name, Transition f, Jacobian jacobian, Mat q, double dt)
    : name_(std::move(name)), f_(std::move(f)), jacobian_(std::move(jacobian)), q_(std::move(q)),
      dt_(dt) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw ConfigError("process model '" + name_ + "': dt must be positive and finite");
  }
  if (!f_ || !jacobian_) {
    throw ConfigError("process model '" + name_ + "': transition and jacobian are required");
  }
  if (q_.rows() < 1 || q_.rows() != q_.cols()) {
    throw ConfigError("process model '" + name_ + "': Q must be square and non-empty");
  }
  if (!is_symmetric_psd(q_)) {
    throw ConfigError("process model '" + name_ + "': Q must be symmetric positive semi-definite");
  }
}

MeasurementModel::MeasurementModel(std::string name, Observation h, Jacobian jacobian, Mat r,
                                   Eigen::Index state_dim)
    : name_(std::move(name)), h_(std::move(h)), jacobian_(std::move(jacobian)), r_(std::move(r)),
      state_dim_(state_dim) {
  if (!h_ || !jacobian_) {
    throw ConfigError("measurement model '" + name_ + "': observation and jacobian are required");
  }
  if (state_dim_ < 1) {
    throw ConfigError("measurement model '" + name_ + "': state dimension must be >= 1");
  }
  if (r_.rows() < 1 || r_.rows() != r_.cols() || !r_.allFinite()) {
    throw ConfigError("measurement model '" + name_ + "': R must be square, finite and non-empty");
  }
  if (max_asymmetry(r_) > kSymmetryTolerance * std::max(1.0, r_.cwiseAbs().maxCoeff())) {
    throw ConfigError("measurement model '" + name_ + "': R must be symmetric");
  }
}

ProcessModel make_constant_velocity_model(double dt, double q_scale) {
  if (!(dt > 0.0)) {
    throw ConfigError("constant velocity model: dt must be positive");
  }
  if (!(q_scale >= 0.0)) {
    throw ConfigError("constant velocity model: q_scale must be non-negative");
  }
  auto f = [dt](const Vec& x) -> Vec {
    Vec out(2);
    out << x(0) + x(1) * dt, x(1);
    return out;
  };
  auto jac = [dt](const Vec&) -> Mat {
    Mat j(2, 2);
    j << 1.0, dt, 0.0, 1.0;
    return j;
  };
  return ProcessModel("constant_velocity", f, jac, q_scale * Mat::Identity(2, 2), dt);
}

ProcessModel make_pendulum_model(double dt, double q_scale) {
  if (!(dt > 0.0)) {
    throw ConfigError("pendulum model: dt must be positive");
  }
  if (!(q_scale >= 0.0)) {
    throw ConfigError("pendulum model: q_scale must be non-negative");
  }
  auto f = [dt](const Vec& x) -> Vec {
    Vec out(2);
    out << x(0) + x(1) * dt, x(1) - std::sin(x(0)) * dt;
    return out;
  };
  auto jac = [dt](const Vec& x) -> Mat {
    Mat j(2, 2);
    j << 1.0, dt, -std::cos(x(0)) * dt, 1.0;
    return j;
  };
  return ProcessModel("pendulum", f, jac, q_scale * Mat::Identity(2, 2), dt);
}

MeasurementModel make_identity_measurement(int m, double r_scale) {
  if (m < 1) {
    throw ConfigError("identity measurement: m must be >= 1");
  }
  if (!(r_scale > 0.0) || !std::isfinite(r_scale)) {
    throw ConfigError("identity measurement: r_scale must be positive");
  }
  auto h = [](const Vec& x) -> Vec { return x; };
  auto jac = [m](const Vec&) -> Mat { return Mat::Identity(m, m); };
  return MeasurementModel("identity", h, jac, r_scale * Mat::Identity(m, m), m);
}

std::size_t TimedSeries::missing_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      samples.begin(), samples.end(), [](const TimedSample& s) { return !s.z.has_value(); }));
}

}  // namespace gazekf
