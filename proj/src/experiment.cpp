#include "gazekf/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gazekf/defaults.hpp"
#include "gazekf/error.hpp"
#include "gazekf/number_format.hpp"
#include "gazekf/random.hpp"

namespace gazekf {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------- config

ExperimentConfig ExperimentConfig::defaults(Mode mode) {
  ExperimentConfig c;
  c.mode = mode;
  c.synth.n = defaults::kSynthN;
  c.synth.dt = defaults::kSynthDt;
  c.synth.sigma_pos = defaults::kSynthSigma;
  c.synth.sigma_vel = defaults::kSynthSigma;
  c.synth.seed = defaults::kSeed;
  c.sma.window = defaults::kSmaWindow;
  c.sma.edge_policy = defaults::kSmaEdgePolicy;
  c.seed = defaults::kSeed;
  c.burn_in = defaults::kBurnIn;
  return c;
}

void ExperimentConfig::resolve() {
  if (!filter.q_scale) {
    filter.q_scale = mode == Mode::synth ? defaults::kSynthQScale : defaults::kGazeQScale;
  }
  if (!filter.r_scale) {
    filter.r_scale = mode == Mode::synth ? defaults::kSynthRScale : defaults::kGazeRScale;
  }
  synth.seed = seed;
  if (!(*filter.q_scale >= 0.0) || !std::isfinite(*filter.q_scale)) {
    throw ConfigError("q_scale must be a finite value >= 0");
  }
  if (!(*filter.r_scale > 0.0) || !std::isfinite(*filter.r_scale)) {
    throw ConfigError("r_scale must be a finite value > 0");
  }
  if (sma.window < 1) {
    throw ConfigError("window must be >= 1");
  }
  if (burn_in < 0) {
    throw ConfigError("burn_in must be >= 0");
  }
  if (mode == Mode::synth) {
    synth.validate();
  } else if (input_path.empty()) {
    throw ConfigError("gaze mode needs an input path (--input)");
  }
}

namespace {

std::string_view mode_name(Mode mode) { return mode == Mode::synth ? "synth" : "gaze"; }

template <typename T>
T get_as(const json& j, std::string_view key) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + std::string(key) + "': " + e.what());
  }
}

void require_object(const json& j, std::string_view key) {
  if (!j.is_object()) {
    throw ConfigError("config key '" + std::string(key) + "' must be an object");
  }
}

Vec vec_from_json(const json& j, std::string_view key) {
  const auto values = get_as<std::vector<double>>(j, key);
  Vec v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = values[i];
  }
  return v;
}

Mat mat_from_json(const json& j, std::string_view key) {
  const auto rows = get_as<std::vector<std::vector<double>>>(j, key);
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = n ? static_cast<Eigen::Index>(rows.front().size()) : 0;
  Mat out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != m) {
      throw ConfigError("config key '" + std::string(key) + "': ragged matrix");
    }
    for (Eigen::Index k = 0; k < m; ++k) {
      out(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
  }
  return out;
}

json vec_to_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(m(i, k));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

void merge_json(ExperimentConfig& config, const json& j) {
  require_object(j, "<root>");
  bool seed_set = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "mode") {
      const auto mode = get_as<std::string>(value, key);
      if (mode != mode_name(config.mode)) {
        throw ConfigError("config mode '" + mode + "' does not match subcommand '" +
                          std::string(mode_name(config.mode)) + "'");
      }
    } else if (key == "synth") {
      require_object(value, key);
      for (const auto& [k, v] : value.items()) {
        if (k == "n") {
          config.synth.n = get_as<int>(v, "synth.n");
        } else if (k == "dt") {
          config.synth.dt = get_as<double>(v, "synth.dt");
        } else if (k == "sigma_pos") {
          config.synth.sigma_pos = get_as<double>(v, "synth.sigma_pos");
        } else if (k == "sigma_vel") {
          config.synth.sigma_vel = get_as<double>(v, "synth.sigma_vel");
        } else if (k == "seed") {
          if (!seed_set) {
            config.seed = get_as<std::uint64_t>(v, "synth.seed");
          }
        } else {
          throw ConfigError("unknown config key 'synth." + k + "'");
        }
      }
    } else if (key == "input_path") {
      config.input_path = get_as<std::string>(value, key);
    } else if (key == "filter") {
      require_object(value, key);
      for (const auto& [k, v] : value.items()) {
        if (k == "q_scale") {
          config.filter.q_scale = get_as<double>(v, "filter.q_scale");
        } else if (k == "r_scale") {
          config.filter.r_scale = get_as<double>(v, "filter.r_scale");
        } else if (k == "x0") {
          config.filter.x0 = v.is_null() ? std::nullopt : std::optional(vec_from_json(v, "filter.x0"));
        } else if (k == "p0") {
          config.filter.p0 = v.is_null() ? std::nullopt : std::optional(mat_from_json(v, "filter.p0"));
        } else {
          throw ConfigError("unknown config key 'filter." + k + "'");
        }
      }
    } else if (key == "sma") {
      require_object(value, key);
      for (const auto& [k, v] : value.items()) {
        if (k == "window") {
          config.sma.window = get_as<int>(v, "sma.window");
        } else if (k == "edge_policy") {
          config.sma.edge_policy = parse_edge_policy(get_as<std::string>(v, "sma.edge_policy"));
        } else {
          throw ConfigError("unknown config key 'sma." + k + "'");
        }
      }
    } else if (key == "output_path") {
      config.output_path = get_as<std::string>(value, key);
    } else if (key == "seed") {
      config.seed = get_as<std::uint64_t>(value, key);
      seed_set = true;
    } else if (key == "burn_in") {
      config.burn_in = get_as<int>(value, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

json to_json(const ExperimentConfig& c) {
  json filter = json::object();
  filter["q_scale"] = c.filter.q_scale ? json(*c.filter.q_scale) : json(nullptr);
  filter["r_scale"] = c.filter.r_scale ? json(*c.filter.r_scale) : json(nullptr);
  filter["x0"] = c.filter.x0 ? vec_to_json(*c.filter.x0) : json(nullptr);
  filter["p0"] = c.filter.p0 ? mat_to_json(*c.filter.p0) : json(nullptr);
  json j = json::object();
  j["mode"] = mode_name(c.mode);
  j["synth"] = {{"n", c.synth.n},
                {"dt", c.synth.dt},
                {"sigma_pos", c.synth.sigma_pos},
                {"sigma_vel", c.synth.sigma_vel},
                {"seed", c.synth.seed}};
  j["input_path"] = c.input_path;
  j["filter"] = filter;
  j["sma"] = {{"window", c.sma.window}, {"edge_policy", to_string(c.sma.edge_policy)}};
  j["output_path"] = c.output_path;
  j["seed"] = c.seed;
  j["burn_in"] = c.burn_in;
  return j;
}

// ---------------------------------------------------------------- plot table

PlotTable make_plot_table(const std::vector<StepRecord>& records, const std::vector<Vec>& sma_output,
                          const std::vector<std::optional<Vec>>& reference,
                          const std::vector<std::optional<Vec>>& measured) {
  const auto n = records.size();
  if (sma_output.size() != n || reference.size() != n || measured.size() != n) {
    throw ConfigError("plot table inputs have different lengths");
  }
  PlotTable table;
  table.reference = reference;
  table.measured = measured;
  table.sma = sma_output;
  table.t.reserve(n);
  table.ekf.reserve(n);
  table.updated.reserve(n);
  for (const auto& r : records) {
    table.t.push_back(r.t);
    table.ekf.push_back(r.posterior.mean);
    table.updated.push_back(r.updated);
  }
  return table;
}

namespace {

void write_pair(std::ostream& out, const std::optional<Vec>& v) {
  if (v) {
    out << format_number((*v)(0)) << ',' << format_number((*v)(1));
  } else {
    out << ',';
  }
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write '" + path.string() + "'");
  }
  out << text;
  out.close();
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

fs::path prepare_output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir + "'");
  }
  return fs::path(dir);
}

std::string plot_table_text(const PlotTable& table) {
  std::ostringstream os;
  write_plot_table(os, table);
  return os.str();
}

}  // namespace

void write_plot_table(std::ostream& out, const PlotTable& table) {
  out << kPlotHeader << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << format_number(table.t[i]) << ',';
    write_pair(out, table.reference[i]);
    out << ',';
    write_pair(out, table.measured[i]);
    out << ',';
    write_pair(out, table.ekf[i]);
    out << ',';
    write_pair(out, table.sma[i]);
    out << ',' << (table.updated[i] ? 1 : 0) << '\n';
  }
}

void emit_plot_table(const PlotTable& table, const std::string& path) {
  write_text_file(path, plot_table_text(table));
}

// ---------------------------------------------------------------- experiments

namespace {

FilterConfig build_filter_config(const TimedSeries& series, ProcessModel process,
                                 MeasurementModel measurement, const FilterParams& params) {
  auto config = default_filter_config(series, std::move(process), std::move(measurement),
                                      defaults::kInitialVariance);
  if (params.x0) {
    config.x0 = *params.x0;
  }
  if (params.p0) {
    config.p0 = *params.p0;
  }
  config.validate();
  return config;
}

std::vector<std::optional<Vec>> posterior_means(const std::vector<StepRecord>& records,
                                                int burn_in) {
  std::vector<std::optional<Vec>> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i < static_cast<std::size_t>(burn_in)) {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(records[i].posterior.mean);
    }
  }
  return out;
}

std::vector<std::optional<Vec>> after_burn_in(const std::vector<Vec>& values, int burn_in) {
  std::vector<std::optional<Vec>> out(values.begin(), values.end());
  for (std::size_t i = 0; i < out.size() && i < static_cast<std::size_t>(burn_in); ++i) {
    out[i].reset();
  }
  return out;
}

std::vector<std::optional<Vec>> measurements_of(const TimedSeries& series) {
  std::vector<std::optional<Vec>> out;
  out.reserve(series.size());
  for (const auto& s : series.samples) {
    out.push_back(s.z);
  }
  return out;
}

double median_interval(const std::vector<GazeSample>& samples) {
  std::vector<double> d;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    d.push_back(samples[i].t - samples[i - 1].t);
  }
  std::sort(d.begin(), d.end());
  const auto mid = d.size() / 2;
  return d.size() % 2 ? d[mid] : 0.5 * (d[mid - 1] + d[mid]);
}

AxisOutcome run_axis(const std::vector<GazeSample>& samples, Axis axis,
                     const ExperimentConfig& config) {
  AxisOutcome out;
  out.axis = axis;
  out.series = to_per_axis_series(samples, axis);
  out.dt = median_interval(samples);
  auto filter = build_filter_config(out.series,
                                    make_constant_velocity_model(out.dt, *config.filter.q_scale),
                                    make_backward_difference_measurement(out.dt, *config.filter.r_scale),
                                    config.filter);
  out.records = run_filter(out.series, filter);
  const auto raw = measurements_of(out.series);
  out.sma_output = sma_filter(raw, config.sma);
  out.prediction_only = static_cast<std::size_t>(std::count_if(
      out.records.begin(), out.records.end(), [](const StepRecord& r) { return !r.updated; }));
  const auto& names = out.series.channel_names;
  out.ekf_rmse = rmse(raw, posterior_means(out.records, config.burn_in), names);
  out.sma_rmse = rmse(raw, after_burn_in(out.sma_output, config.burn_in), names);
  out.table = make_plot_table(out.records, out.sma_output, raw, raw);
  return out;
}

json axis_json(const AxisOutcome& a) {
  return {{"dt", a.dt},
          {"prediction_only", a.prediction_only},
          {"ekf", to_json(a.ekf_rmse)},
          {"sma", to_json(a.sma_rmse)}};
}

}  // namespace

MeasurementModel make_backward_difference_measurement(double dt, double r_scale) {
  if (!(dt > 0.0)) {
    throw ConfigError("backward difference measurement: dt must be positive");
  }
  if (!(r_scale > 0.0)) {
    throw ConfigError("backward difference measurement: r_scale must be positive");
  }
  Mat r(2, 2);
  r << 1.0, 1.0 / dt, 1.0 / dt, 2.0 / (dt * dt);
  auto h = [](const Vec& x) -> Vec { return x; };
  auto jac = [](const Vec&) -> Mat { return Mat::Identity(2, 2); };
  return MeasurementModel("backward_difference", h, jac, r_scale * r, 2);
}

SynthOutcome experiment_synth(ExperimentConfig config) {
  if (config.mode != Mode::synth) {
    throw ConfigError("experiment_synth needs mode synth");
  }
  config.resolve();
  SynthOutcome out;
  out.data = generate_synthetic(config.synth);
  const auto series = out.data.measurements();
  auto filter =
      build_filter_config(series, make_constant_velocity_model(config.synth.dt, *config.filter.q_scale),
                          make_identity_measurement(2, *config.filter.r_scale), config.filter);
  out.records = run_filter(series, filter);

  const std::vector<std::optional<Vec>> noisy(out.data.noisy.begin(), out.data.noisy.end());
  const std::vector<std::optional<Vec>> truth(out.data.truth.begin(), out.data.truth.end());
  out.sma_output = sma_filter(noisy, config.sma);
  out.ekf_rmse = rmse(truth, posterior_means(out.records, config.burn_in), series.channel_names);
  out.sma_rmse = rmse(truth, after_burn_in(out.sma_output, config.burn_in), series.channel_names);
  out.table = make_plot_table(out.records, out.sma_output, truth, noisy);
  out.config = config;

  if (!config.output_path.empty()) {
    const auto dir = prepare_output_dir(config.output_path);
    write_text_file(dir / "plot.csv", plot_table_text(out.table));
    std::ostringstream dataset;
    write_synth_csv(dataset, out.data);
    write_text_file(dir / "dataset.csv", dataset.str());
    const json report = {{"reference", "truth"},
                         {"ekf", to_json(out.ekf_rmse)},
                         {"sma", to_json(out.sma_rmse)}};
    write_text_file(dir / "report.json", report.dump(2) + "\n");
    write_text_file(dir / "config.json", to_json(config).dump(2) + "\n");
  }
  return out;
}

GazeOutcome experiment_gaze(ExperimentConfig config, std::istream& input) {
  if (config.mode != Mode::gaze) {
    throw ConfigError("experiment_gaze needs mode gaze");
  }
  config.resolve();
  const auto samples = ingest_gaze_csv(input);
  GazeOutcome out{config, samples.size(), count_blinks(samples), run_axis(samples, Axis::x, config),
                  run_axis(samples, Axis::y, config)};

  if (!config.output_path.empty()) {
    const auto dir = prepare_output_dir(config.output_path);
    write_text_file(dir / "plot_x.csv", plot_table_text(out.x.table));
    write_text_file(dir / "plot_y.csv", plot_table_text(out.y.table));
    const json summary = {{"reference", "raw"},
                          {"samples", out.samples},
                          {"blinks", out.blinks},
                          {"x", axis_json(out.x)},
                          {"y", axis_json(out.y)}};
    write_text_file(dir / "summary.json", summary.dump(2) + "\n");
    write_text_file(dir / "config.json", to_json(config).dump(2) + "\n");
  }
  return out;
}

GazeOutcome experiment_gaze(ExperimentConfig config) {
  if (config.input_path.empty()) {
    throw ConfigError("gaze mode needs an input path (--input)");
  }
  std::ifstream in(config.input_path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open input file '" + config.input_path + "'");
  }
  return experiment_gaze(std::move(config), in);
}

// ---------------------------------------------------------------- summaries

std::string format_summary(const SynthOutcome& o) {
  std::ostringstream os;
  const auto& c = o.config;
  os << "synth n=" << c.synth.n << " dt=" << format_short(c.synth.dt) << " seed=" << c.seed
     << " q_scale=" << format_short(*c.filter.q_scale)
     << " r_scale=" << format_short(*c.filter.r_scale) << " window=" << c.sma.window << '\n';
  os << "reference=truth n_samples=" << o.ekf_rmse.n_samples << " skipped=" << o.ekf_rmse.skipped
     << '\n';
  os << "filter,pos_rmse,vel_rmse\n";
  os << "ekf," << format_number(o.ekf_rmse.at("pos")) << ',' << format_number(o.ekf_rmse.at("vel"))
     << '\n';
  os << "sma," << format_number(o.sma_rmse.at("pos")) << ',' << format_number(o.sma_rmse.at("vel"))
     << '\n';
  return os.str();
}

std::string format_summary(const GazeOutcome& o) {
  std::ostringstream os;
  os << "gaze samples=" << o.samples << " blinks=" << o.blinks << " reference=raw\n";
  os << "axis,filter,pos_rmse,vel_rmse,n_samples,skipped,prediction_only\n";
  for (const AxisOutcome* a : {&o.x, &o.y}) {
    const std::string p = a->axis == Axis::x ? "x" : "y";
    for (const auto& [name, report] :
         {std::pair{"ekf", &a->ekf_rmse}, std::pair{"sma", &a->sma_rmse}}) {
      os << p << ',' << name << ',' << format_number(report->at(p + "_pos")) << ','
         << format_number(report->at(p + "_vel")) << ',' << report->n_samples << ','
         << report->skipped << ',' << a->prediction_only << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- jacobians

std::vector<JacobianCheckEntry> check_builtin_jacobians(std::uint64_t seed, int points,
                                                        double tolerance) {
  constexpr double kEps = 1e-6;
  Rng rng(seed);

  struct Candidate {
    std::string model;
    std::string function;
    std::function<Vec(const Vec&)> fn;
    std::function<Mat(const Vec&)> jac;
    Eigen::Index dim;
  };
  std::vector<Candidate> candidates;
  auto add_process = [&](ProcessModel m) {
    const std::string label = m.name() + "(dt=" + format_short(m.dt()) + ")";
    candidates.push_back({label, "f", m.transition_fn(),
                          [m](const Vec& x) { return m.jacobian(x); }, m.dim()});
  };
  auto add_measurement = [&](MeasurementModel m, const std::string& label) {
    candidates.push_back({label, "h", m.observation_fn(),
                          [m](const Vec& x) { return m.jacobian(x); }, m.state_dim()});
  };
  add_process(make_constant_velocity_model(1.0, 0.0));
  add_process(make_constant_velocity_model(0.1, 0.0));
  add_process(make_pendulum_model(0.1, 0.0));
  add_process(make_pendulum_model(1.0, 0.0));
  add_measurement(make_identity_measurement(2, 1.0), "identity(m=2)");
  add_measurement(make_backward_difference_measurement(1.0 / 60.0, 1.0), "backward_difference");

  std::vector<JacobianCheckEntry> out;
  for (const auto& c : candidates) {
    JacobianCheckEntry entry{c.model, c.function, 0.0, true};
    for (int p = 0; p < points; ++p) {
      Vec x(c.dim);
      for (Eigen::Index i = 0; i < c.dim; ++i) {
        x(i) = rng.uniform(-10.0, 10.0);
      }
      const Mat analytic = c.jac(x);
      const Mat numeric = numerical_jacobian(c.fn, x, kEps);
      if (analytic.rows() != numeric.rows() || analytic.cols() != numeric.cols()) {
        entry.max_rel_error = std::numeric_limits<double>::infinity();
        continue;
      }
      const Mat rel = (analytic - numeric).cwiseAbs().cwiseQuotient(
          analytic.cwiseAbs().cwiseMax(Mat::Ones(analytic.rows(), analytic.cols())));
      entry.max_rel_error = std::max(entry.max_rel_error, rel.maxCoeff());
    }
    entry.passed = entry.max_rel_error <= tolerance;
    out.push_back(entry);
  }
  return out;
}

}  // namespace gazekf
