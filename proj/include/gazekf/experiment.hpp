#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gazekf/baselines.hpp"
#include "gazekf/ekf.hpp"
#include "gazekf/gazeio.hpp"
#include "gazekf/metrics.hpp"
#include "gazekf/synthgen.hpp"

namespace gazekf {

enum class Mode { synth, gaze };

struct FilterParams {
  /// Unset means the mode's default from gazekf/defaults.hpp.
  std::optional<double> q_scale;
  std::optional<double> r_scale;
  std::optional<Vec> x0;
  std::optional<Mat> p0;
};

struct ExperimentConfig {
  Mode mode = Mode::synth;
  SynthConfig synth;
  std::string input_path;
  FilterParams filter;
  SmaConfig sma;
  std::string output_path;
  std::uint64_t seed = 0;
  /// Leading samples left out of the RMSE (counted as skipped).
  int burn_in = 0;

  static ExperimentConfig defaults(Mode mode);

  /// Fills q/r defaults for the mode, copies seed into synth.seed and checks
  /// invariants. Throws ConfigError.
  void resolve();
};

/// Overlays the keys present in `j` onto `config`. Unknown keys, wrong types
/// and a `mode` that disagrees with config.mode throw ConfigError.
void merge_json(ExperimentConfig& config, const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);

/// Rows of the plot table, one per time step.
struct PlotTable {
  std::vector<double> t;
  std::vector<std::optional<Vec>> reference;
  std::vector<std::optional<Vec>> measured;
  std::vector<Vec> ekf;
  std::vector<Vec> sma;
  std::vector<bool> updated;

  std::size_t size() const noexcept { return t.size(); }
};

inline constexpr const char* kPlotHeader =
    "t,ref_pos,ref_vel,meas_pos,meas_vel,ekf_pos,ekf_vel,sma_pos,sma_vel,updated";

/// Assembles a table from filter output. Throws ConfigError unless every
/// input has records.size() entries.
PlotTable make_plot_table(const std::vector<StepRecord>& records, const std::vector<Vec>& sma_output,
                          const std::vector<std::optional<Vec>>& reference,
                          const std::vector<std::optional<Vec>>& measured);

/// CSV under kPlotHeader. Missing values are empty fields.
void write_plot_table(std::ostream& out, const PlotTable& table);

/// Writes the table to `path`. Throws IoError when the file cannot be written.
void emit_plot_table(const PlotTable& table, const std::string& path);

struct SynthOutcome {
  ExperimentConfig config;
  SynthDataset data;
  std::vector<StepRecord> records;
  std::vector<Vec> sma_output;
  RmseReport ekf_rmse;
  RmseReport sma_rmse;
  PlotTable table;
};

/// Generates data, runs both filters and scores them against the truth. When
/// output_path is set, writes plot.csv, dataset.csv, report.json and the
/// resolved config.json into that directory.
SynthOutcome experiment_synth(ExperimentConfig config);

struct AxisOutcome {
  Axis axis;
  TimedSeries series;
  std::vector<StepRecord> records;
  std::vector<Vec> sma_output;
  RmseReport ekf_rmse;
  RmseReport sma_rmse;
  std::size_t prediction_only = 0;
  double dt = 0.0;
  PlotTable table;
};

struct GazeOutcome {
  ExperimentConfig config;
  std::size_t samples = 0;
  std::size_t blinks = 0;
  AxisOutcome x;
  AxisOutcome y;
};

/// Position/velocity measurement of one gaze axis where velocity is the
/// backward difference of positions dt apart, each with variance r_scale:
/// R = r_scale [[1, 1/dt], [1/dt, 2/dt^2]].
MeasurementModel make_backward_difference_measurement(double dt, double r_scale);

/// Per-axis EKF and SMA over a gaze CSV; RMSE is against the raw
/// measurements. When output_path is set, writes plot_x.csv, plot_y.csv,
/// summary.json and config.json there. Throws IoError for an unreadable
/// input (message names the path) and ParseError for bad rows.
GazeOutcome experiment_gaze(ExperimentConfig config);
GazeOutcome experiment_gaze(ExperimentConfig config, std::istream& input);

std::string format_summary(const SynthOutcome& outcome);
std::string format_summary(const GazeOutcome& outcome);

struct JacobianCheckEntry {
  std::string model;
  std::string function;
  double max_rel_error = 0.0;
  bool passed = false;
};

/// Compares every built-in analytic Jacobian with central differences
/// (eps 1e-6) at `points` random states in [-10, 10]^n. Relative error is
/// |analytic - numeric| / max(1, |analytic|) per entry.
std::vector<JacobianCheckEntry> check_builtin_jacobians(std::uint64_t seed = 1, int points = 100,
                                                        double tolerance = 1e-5);

}  // namespace gazekf
