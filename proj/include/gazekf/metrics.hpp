#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gazekf/ekf.hpp"
#include "gazekf/statespace.hpp"

namespace gazekf {

struct RmseReport {
  std::vector<std::pair<std::string, double>> per_channel;
  std::size_t n_samples = 0;
  /// Indices left out because truth or estimate was missing there.
  std::size_t skipped = 0;

  /// Throws std::out_of_range for an unknown channel.
  double at(const std::string& channel) const;
};

/// Per-channel root mean square error over the indices where both truth and
/// estimate are present. Channels are named `channel_names` when given,
/// otherwise ch0, ch1, ...
///
/// Throws ConfigError on length or dimension mismatch, or when no index has
/// both values.
RmseReport rmse(const std::vector<std::optional<Vec>>& truth,
                const std::vector<std::optional<Vec>>& estimate,
                const std::vector<std::string>& channel_names = {});

/// Convenience overload for fully present series.
RmseReport rmse(const std::vector<Vec>& truth, const std::vector<Vec>& estimate,
                const std::vector<std::string>& channel_names = {});

/// Flat object: one key per channel plus n_samples and skipped.
nlohmann::json to_json(const RmseReport& report);

/// Column names for to_csv_row: channel names sorted, then n_samples, skipped.
std::string csv_header(const RmseReport& report);
std::string to_csv_row(const RmseReport& report);

/// Normalized innovation squared, nu^T S^-1 nu.
double nis(const Vec& innovation, const Mat& innovation_cov);

/// NIS for every updated step, with S = H P_prior H^T + R and H evaluated
/// at the prior mean. Steps without an update are skipped.
std::vector<double> nis(const std::vector<StepRecord>& records, const MeasurementModel& measurement);

}  // namespace gazekf
