#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace gazekf {

/// 17 significant digits, locale independent; parses back to the same double.
std::string format_number(double value);

/// Shortest text that parses back to the same double, for labels and logs.
std::string format_short(double value);

/// Strict locale-independent parse of the whole field (surrounding blanks
/// allowed). Returns nullopt for anything else.
std::optional<double> parse_number(std::string_view text);

std::string_view trim(std::string_view text) noexcept;

}  // namespace gazekf
