// gazekf command-line front end.
//
//   gazekf synth [--n N] [--dt DT] [--sigma-pos S] [--sigma-vel S] [common]
//   gazekf gaze --input trace.csv [common]
//   gazekf jacobian-check
//
// Exit status: 0 success, 2 input/config error, 1 numeric failure.
// stdout carries only the summary table; diagnostics go to stderr.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "gazekf/error.hpp"
#include "gazekf/experiment.hpp"
#include "gazekf/number_format.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitInput = 2;

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<double> q_scale;
  std::optional<double> r_scale;
  std::optional<int> window;
  std::optional<std::string> edge_policy;
  std::optional<int> burn_in;
  std::optional<std::string> out;
  std::optional<std::string> config;
};

struct SynthFlags {
  std::optional<int> n;
  std::optional<double> dt;
  std::optional<double> sigma_pos;
  std::optional<double> sigma_vel;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--q-scale", f.q_scale, "Process noise: Q = q_scale * I");
  cmd->add_option("--r-scale", f.r_scale, "Measurement noise scale");
  cmd->add_option("--window", f.window, "SMA window length");
  cmd->add_option("--edge-policy", f.edge_policy, "SMA leading edge: partial|hold");
  cmd->add_option("--burn-in", f.burn_in, "Leading samples excluded from RMSE");
  cmd->add_option("--out", f.out, "Output directory for tables, reports and resolved config");
  cmd->add_option("--config", f.config, "JSON config file (flags override it)");
}

gazekf::ExperimentConfig resolve_config(gazekf::Mode mode, const CommonFlags& f) {
  auto config = gazekf::ExperimentConfig::defaults(mode);
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) {
      throw gazekf::IoError("cannot open config file '" + *f.config + "'");
    }
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw gazekf::ConfigError("config file '" + *f.config + "': " + e.what());
    }
    gazekf::merge_json(config, j);
  }
  if (f.seed) config.seed = *f.seed;
  if (f.q_scale) config.filter.q_scale = *f.q_scale;
  if (f.r_scale) config.filter.r_scale = *f.r_scale;
  if (f.window) config.sma.window = *f.window;
  if (f.edge_policy) config.sma.edge_policy = gazekf::parse_edge_policy(*f.edge_policy);
  if (f.burn_in) config.burn_in = *f.burn_in;
  if (f.out) config.output_path = *f.out;
  return config;
}

int run_jacobian_check() {
  const auto entries = gazekf::check_builtin_jacobians();
  bool ok = true;
  std::cout << "model,function,max_rel_error,status\n";
  for (const auto& e : entries) {
    std::cout << e.model << ',' << e.function << ',' << gazekf::format_number(e.max_rel_error) << ','
              << (e.passed ? "ok" : "FAIL") << '\n';
    ok = ok && e.passed;
  }
  if (!ok) {
    std::cerr << "gazekf: analytic jacobian disagrees with central differences\n";
  }
  return ok ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extended Kalman filter smoothing for gaze traces, with an SMA baseline"};
  app.require_subcommand(1);

  CommonFlags synth_common;
  SynthFlags synth_flags;
  auto* synth = app.add_subcommand("synth", "Sine/cosine synthetic experiment");
  synth->add_option("--n", synth_flags.n, "Number of samples");
  synth->add_option("--dt", synth_flags.dt, "Time step");
  synth->add_option("--sigma-pos", synth_flags.sigma_pos, "Position noise standard deviation");
  synth->add_option("--sigma-vel", synth_flags.sigma_vel, "Velocity noise standard deviation");
  add_common(synth, synth_common);

  CommonFlags gaze_common;
  std::optional<std::string> input;
  auto* gaze = app.add_subcommand("gaze", "Filter a gaze CSV trace (t,x,y[,blink])");
  gaze->add_option("--input", input, "Gaze CSV file");
  add_common(gaze, gaze_common);

  auto* jacobian = app.add_subcommand("jacobian-check",
                                      "Check built-in analytic Jacobians against finite differences");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (jacobian->parsed()) {
      return run_jacobian_check();
    }
    if (synth->parsed()) {
      auto config = resolve_config(gazekf::Mode::synth, synth_common);
      if (synth_flags.n) config.synth.n = *synth_flags.n;
      if (synth_flags.dt) config.synth.dt = *synth_flags.dt;
      if (synth_flags.sigma_pos) config.synth.sigma_pos = *synth_flags.sigma_pos;
      if (synth_flags.sigma_vel) config.synth.sigma_vel = *synth_flags.sigma_vel;
      std::cout << gazekf::format_summary(gazekf::experiment_synth(config));
      return kExitOk;
    }
    auto config = resolve_config(gazekf::Mode::gaze, gaze_common);
    if (input) config.input_path = *input;
    std::cout << gazekf::format_summary(gazekf::experiment_gaze(config));
    return kExitOk;
  } catch (const gazekf::NumericError& e) {
    std::cerr << "gazekf: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const gazekf::ConfigError& e) {
    std::cerr << "gazekf: " << e.what() << '\n';
    return kExitInput;
  } catch (const gazekf::IoError& e) {
    std::cerr << "gazekf: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "gazekf: " << e.what() << '\n';
    return kExitNumeric;
  }
}
