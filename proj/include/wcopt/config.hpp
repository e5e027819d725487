#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wcopt/models.hpp"
#include "wcopt/problem.hpp"
#include "wcopt/regularizer.hpp"
#include "wcopt/rng.hpp"

namespace wcopt {

/// A problem family with its dimensions. Named presets are
/// phase-<d>-<m> and blind-<d1>-<d2>-<m>.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::phase_retrieval;
  Index d1 = 10;
  Index d2 = 0;
  Index m = 30;
  double mu = 0.0;

  std::string name() const;
  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// The shipped presets, in order.
std::vector<std::string> preset_names();
/// Parses any phase-<d>-<m>, blind-<d1>-<d2>-<m> or lad-<d>-<m> name.
/// Throws Errc::invalid_argument.
ProblemSpec parse_preset(std::string_view name);

ProblemInstance generate_instance(const ProblemSpec& spec, RngStream& rng);
/// A point uniform on the unit sphere; for blind deconvolution x0 and y0 are
/// independent unit-sphere points.
Vector initial_point(const ProblemSpec& spec, RngStream& rng);

enum class Spacing { linear, log };

struct StepsizeGrid {
  std::size_t count = 100;
  double min = 1e-4;
  double max = 1.0;
  Spacing spacing = Spacing::linear;

  /// Step sizes beta^{-1}, ascending.
  std::vector<double> values() const;
  friend bool operator==(const StepsizeGrid&, const StepsizeGrid&) = default;
};

struct SweepConfig {
  ProblemSpec problem;
  std::vector<ModelFamily> methods{ModelFamily::linear, ModelFamily::prox_linear,
                                   ModelFamily::prox_point};
  StepsizeGrid stepsize;
  std::size_t epochs = 100;
  std::size_t rounds = 15;
  double target = 1e-4;
  std::uint64_t seed = 1;
  std::string output;
  Regularizer regularizer;
  /// Fill the wall_ms column. Off by default so output is reproducible.
  bool timing = false;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// Parses the JSON config text; empty text gives the defaults. Throws
/// ConfigError naming the offending field (empty for syntax errors, whose
/// message carries line and column).
SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::string& path);
std::string dump_config(const SweepConfig& config);
void save_config(const SweepConfig& config, const std::string& path);

}  // namespace wcopt
