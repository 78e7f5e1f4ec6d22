#include "gazekf/synthgen.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "gazekf/error.hpp"
#include "gazekf/number_format.hpp"
#include "gazekf/random.hpp"

namespace gazekf {

namespace {
constexpr std::string_view kSynthHeader = "t,pos_true,vel_true,pos_meas,vel_meas";
}

void SynthConfig::validate() const {
  if (n < 1) {
    throw ConfigError("synthetic config: n must be >= 1");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("synthetic config: dt must be positive");
  }
  if (!(sigma_pos >= 0.0) || !(sigma_vel >= 0.0)) {
    throw ConfigError("synthetic config: noise standard deviations must be >= 0");
  }
}

TimedSeries SynthDataset::measurements() const {
  TimedSeries series;
  series.channel_names = {"pos", "vel"};
  series.samples.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    series.samples.push_back({times[k], noisy[k]});
  }
  return series;
}

SynthDataset generate_synthetic(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  SynthDataset data;
  const auto n = static_cast<std::size_t>(config.n);
  data.times.reserve(n);
  data.truth.reserve(n);
  data.noisy.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    Vec truth(2);
    truth << std::sin(t), std::cos(t);
    Vec noisy = truth;
    noisy(0) += config.sigma_pos * rng.gaussian();
    noisy(1) += config.sigma_vel * rng.gaussian();
    data.times.push_back(t);
    data.truth.push_back(std::move(truth));
    data.noisy.push_back(std::move(noisy));
  }
  return data;
}

void write_synth_csv(std::ostream& out, const SynthDataset& data) {
  out << kSynthHeader << '\n';
  for (std::size_t k = 0; k < data.size(); ++k) {
    out << format_number(data.times[k]) << ',' << format_number(data.truth[k](0)) << ','
        << format_number(data.truth[k](1)) << ',' << format_number(data.noisy[k](0)) << ','
        << format_number(data.noisy[k](1)) << '\n';
  }
  if (!out) {
    throw IoError("failed writing synthetic dataset");
  }
}

SynthDataset read_synth_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kSynthHeader) {
    throw ParseError(1, "expected header '" + std::string(kSynthHeader) + "'");
  }
  SynthDataset data;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    double fields[5];
    std::size_t start = 0;
    for (int c = 0; c < 5; ++c) {
      const auto comma = line.find(',', start);
      const bool last = c == 4;
      if (last != (comma == std::string::npos)) {
        throw ParseError(line_no, "expected 5 fields");
      }
      const auto value = parse_number(std::string_view(line).substr(start, comma - start));
      if (!value || !std::isfinite(*value)) {
        throw ParseError(line_no, "field " + std::to_string(c + 1) + " is not a finite number");
      }
      fields[c] = *value;
      start = comma + 1;
    }
    Vec truth(2);
    truth << fields[1], fields[2];
    Vec noisy(2);
    noisy << fields[3], fields[4];
    data.times.push_back(fields[0]);
    data.truth.push_back(std::move(truth));
    data.noisy.push_back(std::move(noisy));
  }
  return data;
}

}  // namespace gazekf
