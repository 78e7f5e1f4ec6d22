#pragma once

#include <stdexcept>
#include <string>

namespace gazekf {

/// Bad configuration or malformed input (CLI exit status 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input file could not be opened, read or written (CLI exit status 2).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text input that does not follow its schema. Carries the 1-based line.
class ParseError : public ConfigError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ConfigError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Arithmetic broke down: non-finite values, singular innovation covariance
/// (CLI exit status 1).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gazekf
