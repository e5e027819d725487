#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wcopt {

enum class Errc {
  invalid_argument,
  invalid_dimension,
  dimension_mismatch,
  degenerate_polynomial,
  nonpositive_step,
  nonconvex_subproblem,
  unsupported_combination,
  diverged_run,
  envelope_parameter,
  tolerance_not_met,
  empty_trajectory,
  trajectory_not_retained,
  config_error,
  io_error,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised when an iterate stops being finite; carries the offending step.
class DivergedRun : public Error {
 public:
  DivergedRun(std::size_t step, const std::string& what)
      : Error(Errc::diverged_run, what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Validation or parse failure in a configuration file. `field` is the dotted
/// path of the offending key (empty for syntax errors).
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(Errc::config_error, what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace wcopt
