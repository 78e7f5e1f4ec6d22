#include "gazekf/gazeio.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "gazekf/error.hpp"
#include "gazekf/number_format.hpp"

namespace gazekf {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool is_nan_token(std::string_view field) {
  return field == "nan" || field == "NaN" || field == "NAN";
}

// Empty or nan means "no coordinate".
std::optional<double> parse_coordinate(std::string_view field, std::size_t line_no,
                                       std::string_view name) {
  if (field.empty() || is_nan_token(field)) {
    return std::nullopt;
  }
  const auto value = parse_number(field);
  if (!value || !std::isfinite(*value)) {
    throw ParseError(line_no, std::string(name) + " is not a number: '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::vector<GazeSample> ingest_gaze_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool has_blink_column = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
      line.erase(0, 3);
    }
    const auto stripped = trim(line);
    if (stripped.empty()) {
      continue;
    }
    const auto fields = split_fields(stripped);
    if (fields.size() == 3 && fields[0] == "t" && fields[1] == "x" && fields[2] == "y") {
      has_blink_column = false;
    } else if (fields.size() == 4 && fields[0] == "t" && fields[1] == "x" && fields[2] == "y" &&
               fields[3] == "blink") {
      has_blink_column = true;
    } else {
      throw ParseError(line_no, "expected header 't,x,y' or 't,x,y,blink'");
    }
    have_header = true;
  }
  if (!have_header) {
    throw ParseError(std::max<std::size_t>(line_no, 1), "missing header 't,x,y[,blink]'");
  }

  const std::size_t expected = has_blink_column ? 4 : 3;
  std::vector<GazeSample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    const auto stripped = trim(line);
    if (stripped.empty()) {
      continue;
    }
    const auto fields = split_fields(stripped);
    if (fields.size() != expected) {
      throw ParseError(line_no, "expected " + std::to_string(expected) + " fields, found " +
                                    std::to_string(fields.size()));
    }
    const auto t = parse_number(fields[0]);
    if (!t || !std::isfinite(*t)) {
      throw ParseError(line_no, "timestamp is not a number: '" + std::string(fields[0]) + "'");
    }
    if (!samples.empty() && !(*t > samples.back().t)) {
      throw ParseError(line_no, "timestamp " + std::string(fields[0]) +
                                    " does not increase over the previous row");
    }
    auto x = parse_coordinate(fields[1], line_no, "x");
    auto y = parse_coordinate(fields[2], line_no, "y");
    bool blink = !x || !y;
    if (has_blink_column) {
      if (fields[3] == "1") {
        blink = true;
      } else if (fields[3] != "0" && !fields[3].empty()) {
        throw ParseError(line_no, "blink must be 0 or 1, got '" + std::string(fields[3]) + "'");
      }
    }
    samples.push_back(blink ? GazeSample::blink_at(*t) : GazeSample::at(*t, *x, *y));
  }
  return samples;
}

void emit_gaze_csv(std::ostream& out, const std::vector<GazeSample>& samples) {
  out << "t,x,y,blink\n";
  for (const auto& s : samples) {
    out << format_number(s.t) << ',';
    if (s.blink) {
      out << ",,1\n";
    } else {
      out << format_number(*s.x) << ',' << format_number(*s.y) << ",0\n";
    }
  }
  if (!out) {
    throw IoError("failed writing gaze samples");
  }
}

TimedSeries to_per_axis_series(const std::vector<GazeSample>& samples, Axis axis) {
  const auto usable = samples.size() - count_blinks(samples);
  if (usable < 2) {
    throw ConfigError("gaze trace needs at least 2 non-blink samples, found " +
                      std::to_string(usable));
  }
  const std::string prefix = axis == Axis::x ? "x" : "y";
  TimedSeries series;
  series.channel_names = {prefix + "_pos", prefix + "_vel"};
  series.samples.reserve(samples.size());

  std::optional<std::pair<double, double>> previous;  // (t, position)
  for (const auto& s : samples) {
    if (s.blink) {
      series.samples.push_back({s.t, std::nullopt});
      continue;
    }
    const double pos = axis == Axis::x ? *s.x : *s.y;
    const double vel = previous ? (pos - previous->second) / (s.t - previous->first) : 0.0;
    Vec z(2);
    z << pos, vel;
    series.samples.push_back({s.t, std::move(z)});
    previous = {s.t, pos};
  }
  return series;
}

std::size_t count_blinks(const std::vector<GazeSample>& samples) noexcept {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const GazeSample& s) { return s.blink; }));
}

}  // namespace gazekf
