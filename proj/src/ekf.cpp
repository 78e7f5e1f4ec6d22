#include "gazekf/ekf.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "gazekf/error.hpp"

namespace gazekf {

namespace {

std::string describe(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    os << (i ? ", " : "") << v(i);
  }
  os << ']';
  return os.str();
}

}  // namespace

void FilterConfig::validate() const {
  const Eigen::Index n = process.dim();
  if (x0.size() != n) {
    throw ConfigError("filter config: x0 has dimension " + std::to_string(x0.size()) +
                      ", process model expects " + std::to_string(n));
  }
  if (p0.rows() != n || p0.cols() != n) {
    throw ConfigError("filter config: p0 must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (measurement.state_dim() != n) {
    throw ConfigError("filter config: measurement model expects state dimension " +
                      std::to_string(measurement.state_dim()) + ", process model has " +
                      std::to_string(n));
  }
  if (!x0.allFinite()) {
    throw ConfigError("filter config: x0 must be finite");
  }
  if (!is_symmetric_psd(p0)) {
    throw ConfigError("filter config: p0 must be symmetric positive semi-definite");
  }
}

FilterConfig default_filter_config(const TimedSeries& series, ProcessModel process,
                                   MeasurementModel measurement, double p0_scale) {
  if (!(p0_scale > 0.0)) {
    throw ConfigError("default filter config: p0 scale must be positive");
  }
  const TimedSample* first = nullptr;
  for (const auto& s : series.samples) {
    if (s.z) {
      first = &s;
      break;
    }
  }
  if (first == nullptr) {
    throw ConfigError("default filter config: series contains no measurement");
  }
  const Eigen::Index n = process.dim();
  const Mat h = measurement.jacobian(Vec::Zero(n));
  if (first->z->size() != h.rows()) {
    throw ConfigError("default filter config: measurement dimension mismatch");
  }
  Vec x0 = h.completeOrthogonalDecomposition().solve(*first->z);
  Mat p0 = p0_scale * Mat::Identity(n, n);
  FilterConfig config{std::move(x0), std::move(p0), std::move(process), std::move(measurement)};
  config.validate();
  return config;
}

Mat solve_spd(const Mat& s, const Mat& b) {
  Eigen::LLT<Mat> llt(s);
  if (llt.info() != Eigen::Success) {
    throw NumericError("innovation covariance is not positive definite");
  }
  const double rcond = llt.rcond();
  if (!(rcond >= std::numeric_limits<double>::epsilon())) {
    std::ostringstream os;
    os << "innovation covariance is singular at working precision (rcond " << rcond << ")";
    throw NumericError(os.str());
  }
  return llt.solve(b);
}

Mat innovation_covariance(const StateEstimate& state, const MeasurementModel& model) {
  const Mat h = model.jacobian(state.mean);
  return symmetrized(h * state.cov * h.transpose() + model.r());
}

StateEstimate predict(const StateEstimate& state, const ProcessModel& model) {
  Vec mean = model.f(state.mean);
  if (mean.size() != model.dim() || !mean.allFinite()) {
    throw NumericError("prediction produced a non-finite state from " + describe(state.mean));
  }
  const Mat f = model.jacobian(state.mean);
  if (!f.allFinite()) {
    throw NumericError("process jacobian is non-finite at " + describe(state.mean));
  }
  Mat cov = symmetrized(f * state.cov * f.transpose() + model.q());
  return {std::move(mean), std::move(cov)};
}

UpdateResult update(const StateEstimate& state, const MeasurementModel& model, const Vec& z) {
  if (z.size() != model.dim()) {
    throw ConfigError("measurement has dimension " + std::to_string(z.size()) + ", model expects " +
                      std::to_string(model.dim()));
  }
  if (!z.allFinite()) {
    throw NumericError("measurement is non-finite: " + describe(z));
  }
  const Mat h = model.jacobian(state.mean);
  const Vec predicted = model.h(state.mean);
  if (!h.allFinite() || !predicted.allFinite()) {
    throw NumericError("measurement model is non-finite at " + describe(state.mean));
  }
  const Mat pht = state.cov * h.transpose();
  const Mat s = symmetrized(h * pht + model.r());
  // K = P H^T S^-1, computed as (S^-1 H P)^T since S and P are symmetric.
  Mat gain = solve_spd(s, pht.transpose()).transpose();
  Vec innovation = z - predicted;

  const Eigen::Index n = state.mean.size();
  StateEstimate posterior;
  posterior.mean = state.mean + gain * innovation;
  posterior.cov = symmetrized((Mat::Identity(n, n) - gain * h) * state.cov);
  return {std::move(posterior), std::move(innovation), std::move(gain)};
}

StepRecord step(const StateEstimate& state, const FilterConfig& config,
                const std::optional<Vec>& z, double t) {
  StepRecord record;
  record.t = t;
  record.prior = predict(state, config.process);
  if (!z) {
    record.posterior = record.prior;
    return record;
  }
  auto result = update(record.prior, config.measurement, *z);
  record.posterior = std::move(result.posterior);
  record.innovation = std::move(result.innovation);
  record.gain = std::move(result.gain);
  record.updated = true;
  return record;
}

std::vector<StepRecord> run_filter(const TimedSeries& series, const FilterConfig& config) {
  config.validate();
  for (std::size_t i = 1; i < series.samples.size(); ++i) {
    if (!(series.samples[i].t > series.samples[i - 1].t)) {
      throw ConfigError("timestamps must be strictly increasing (sample " + std::to_string(i) + ")");
    }
  }

  std::vector<StepRecord> records;
  records.reserve(series.samples.size());
  StateEstimate belief{config.x0, config.p0};
  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    const auto& sample = series.samples[i];
    try {
      records.push_back(step(belief, config, sample.z, sample.t));
    } catch (const NumericError& e) {
      throw NumericError("step " + std::to_string(i) + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError("step " + std::to_string(i) + ": " + e.what());
    }
    belief = records.back().posterior;
  }
  return records;
}

Mat numerical_jacobian(const std::function<Vec(const Vec&)>& fn, const Vec& x, double eps) {
  if (!(eps > 0.0)) {
    throw ConfigError("numerical_jacobian: eps must be positive");
  }
  const Vec f0 = fn(x);
  if (!f0.allFinite()) {
    throw NumericError("numerical_jacobian: function is non-finite at " + describe(x));
  }
  Mat jac(f0.size(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vec plus = x;
    Vec minus = x;
    plus(i) += eps;
    minus(i) -= eps;
    const Vec fp = fn(plus);
    const Vec fm = fn(minus);
    if (!fp.allFinite() || !fm.allFinite() || fp.size() != f0.size() || fm.size() != f0.size()) {
      throw NumericError("numerical_jacobian: function is non-finite near " + describe(x));
    }
    // Divide by the step actually taken after rounding x +/- eps.
    jac.col(i) = (fp - fm) / (plus(i) - minus(i));
  }
  return jac;
}

}  // namespace gazekf
