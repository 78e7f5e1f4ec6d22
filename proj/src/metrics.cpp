#include "gazekf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "gazekf/error.hpp"
#include "gazekf/kernels/kernels.hpp"
#include "gazekf/number_format.hpp"

namespace gazekf {

double RmseReport::at(const std::string& channel) const {
  for (const auto& [name, value] : per_channel) {
    if (name == channel) {
      return value;
    }
  }
  throw std::out_of_range("RmseReport has no channel '" + channel + "'");
}

RmseReport rmse(const std::vector<std::optional<Vec>>& truth,
                const std::vector<std::optional<Vec>>& estimate,
                const std::vector<std::string>& channel_names) {
  if (truth.size() != estimate.size()) {
    throw ConfigError("rmse: truth has " + std::to_string(truth.size()) + " samples, estimate has " +
                      std::to_string(estimate.size()));
  }
  const std::size_t n = truth.size();
  Eigen::Index dim = -1;
  std::vector<std::uint8_t> mask(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!truth[i] || !estimate[i]) {
      continue;
    }
    if (dim < 0) {
      dim = truth[i]->size();
    }
    if (truth[i]->size() != dim || estimate[i]->size() != dim) {
      throw ConfigError("rmse: dimension mismatch at index " + std::to_string(i));
    }
    mask[i] = 1;
  }
  if (dim < 0) {
    throw ConfigError("rmse: no index has both truth and estimate");
  }
  if (!channel_names.empty() && channel_names.size() != static_cast<std::size_t>(dim)) {
    throw ConfigError("rmse: expected " + std::to_string(dim) + " channel names");
  }

  RmseReport report;
  std::vector<double> a(n, 0.0);
  std::vector<double> b(n, 0.0);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i]) {
        a[i] = (*truth[i])(c);
        b[i] = (*estimate[i])(c);
      }
    }
    const auto acc = kernels::masked_sum_sq_diff(a, b, mask);
    const double value = std::sqrt(acc.sum / static_cast<double>(acc.count));
    if (!std::isfinite(value)) {
      throw NumericError("rmse: non-finite result on channel " + std::to_string(c));
    }
    report.per_channel.emplace_back(
        channel_names.empty() ? "ch" + std::to_string(c) : channel_names[static_cast<std::size_t>(c)],
        value);
    report.n_samples = acc.count;
  }
  report.skipped = n - report.n_samples;
  return report;
}

RmseReport rmse(const std::vector<Vec>& truth, const std::vector<Vec>& estimate,
                const std::vector<std::string>& channel_names) {
  std::vector<std::optional<Vec>> t(truth.begin(), truth.end());
  std::vector<std::optional<Vec>> e(estimate.begin(), estimate.end());
  return rmse(t, e, channel_names);
}

nlohmann::json to_json(const RmseReport& report) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : report.per_channel) {
    j[name] = value;
  }
  j["n_samples"] = report.n_samples;
  j["skipped"] = report.skipped;
  return j;
}

namespace {

std::vector<std::pair<std::string, double>> sorted_channels(const RmseReport& report) {
  auto channels = report.per_channel;
  std::sort(channels.begin(), channels.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  return channels;
}

}  // namespace

std::string csv_header(const RmseReport& report) {
  std::string out;
  for (const auto& [name, value] : sorted_channels(report)) {
    out += name;
    out += ',';
  }
  return out + "n_samples,skipped";
}

std::string to_csv_row(const RmseReport& report) {
  std::string out;
  for (const auto& [name, value] : sorted_channels(report)) {
    out += format_number(value);
    out += ',';
  }
  return out + std::to_string(report.n_samples) + ',' + std::to_string(report.skipped);
}

double nis(const Vec& innovation, const Mat& innovation_cov) {
  if (innovation_cov.rows() != innovation.size() || innovation_cov.cols() != innovation.size()) {
    throw ConfigError("nis: innovation and covariance dimensions differ");
  }
  const Vec solved = solve_spd(symmetrized(innovation_cov), innovation);
  return innovation.dot(solved);
}

std::vector<double> nis(const std::vector<StepRecord>& records, const MeasurementModel& measurement) {
  std::vector<double> out;
  for (const auto& r : records) {
    if (!r.updated || !r.innovation) {
      continue;
    }
    out.push_back(nis(*r.innovation, innovation_covariance(r.prior, measurement)));
  }
  return out;
}

}  // namespace gazekf
