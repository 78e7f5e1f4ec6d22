#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "gazekf/statespace.hpp"

namespace gazekf {

/// One eye-tracker sample in screen pixels. A blink carries no coordinates.
struct GazeSample {
  double t = 0.0;
  std::optional<double> x;
  std::optional<double> y;
  bool blink = false;

  static GazeSample at(double t, double x, double y) { return {t, x, y, false}; }
  static GazeSample blink_at(double t) { return {t, std::nullopt, std::nullopt, true}; }

  friend bool operator==(const GazeSample&, const GazeSample&) = default;
};

enum class Axis { x, y };

/// Reads `t,x,y` or `t,x,y,blink` CSV (LF or CRLF). A row is a blink when
/// blink=1 or either coordinate is empty or `nan`; its coordinates are
/// dropped. Blank lines are ignored.
///
/// Throws ParseError (with the 1-based line) for a missing or unknown
/// header, a bad field, or timestamps that do not strictly increase.
std::vector<GazeSample> ingest_gaze_csv(std::istream& in);

/// Writes `t,x,y,blink`; blink rows get empty coordinates and blink=1.
void emit_gaze_csv(std::ostream& out, const std::vector<GazeSample>& samples);

/// Position/velocity measurements along one axis. Velocity is the backward
/// difference to the previous non-blink sample (0 for the first one); blink
/// samples become missing measurements. Channel names are `<axis>_pos` and
/// `<axis>_vel`.
///
/// Throws ConfigError with fewer than two non-blink samples.
TimedSeries to_per_axis_series(const std::vector<GazeSample>& samples, Axis axis);

std::size_t count_blinks(const std::vector<GazeSample>& samples) noexcept;

}  // namespace gazekf
