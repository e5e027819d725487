#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wcopt/models.hpp"
#include "wcopt/problem.hpp"
#include "wcopt/regularizer.hpp"
#include "wcopt/rng.hpp"

namespace wcopt {

enum class ScheduleKind { constant_alpha, constant_beta, strongly_convex, custom };

struct ScheduleParams {
  double gamma = 0.0;
  /// Envelope parameter for constant_beta.
  double rho_bar = 0.0;
  /// Strong convexity for strongly_convex.
  double mu = 0.0;
  /// Weak convexity of the objective; gamma > 1/(2 rho) raises a warning.
  double rho = 0.0;
  /// Suppresses the gamma warning.
  bool allow_large_gamma = false;
  /// Per-step beta_t for custom schedules (length T + 1); alpha_t = 1/beta_t.
  std::vector<double> custom_beta;
};

/// Control sequences for steps t = 0..T.
///   constant_alpha   alpha_t = gamma / sqrt(T + 1),        beta_t = 1 / alpha_t
///   constant_beta    beta_t = rho_bar + sqrt(T + 1) / gamma, alpha_t = 1 / beta_t
///   strongly_convex  beta_t = mu (t + 1) / 2,              alpha_t = 1 / beta_t
///   custom           beta_t given,                          alpha_t = 1 / beta_t
struct Schedule {
  ScheduleKind kind = ScheduleKind::custom;
  std::size_t horizon = 0;  // T
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<std::string> warnings;

  std::size_t steps() const noexcept { return alpha.size(); }
  /// P(t* = t) proportional to alpha_t.
  std::vector<double> psg_weights() const;
  /// P(t* = t) proportional to 1 / (beta_t - eta); empty if some beta_t <= eta.
  std::vector<double> model_weights(double eta) const;
};

/// Throws Errc::invalid_argument for nonpositive gamma, mu or T, or a custom
/// sequence of the wrong length or with nonpositive entries.
Schedule make_schedule(ScheduleKind kind, const ScheduleParams& params, std::size_t horizon);

enum class AveragingMode { none, uniform, strongly_convex };

struct RunOptions {
  /// Steps per logged epoch; 0 selects m.
  std::size_t steps_per_epoch = 0;
  /// Keep x_0..x_{T+1}; otherwise only epoch snapshots.
  bool retain_trajectory = false;
  AveragingMode averaging = AveragingMode::none;
  /// Passed to model_step.
  StepOptions step;
};

struct RunRecord {
  /// x_0 and the iterate after every completed epoch.
  std::vector<Vector> epoch_iterates;
  /// phi = f + r at the same points.
  std::vector<double> objective_per_epoch;
  /// x_0..x_{T+1} when retained.
  std::vector<Vector> trajectory;
  Vector final_iterate;
  double final_objective = 0.0;
  std::size_t t_star = 0;
  Vector x_star;
  /// Running weighted average when averaging is enabled.
  Vector averaged_iterate;
  AveragingMode averaging = AveragingMode::none;
  /// Step sizes used by the run, for weighted_average.
  std::vector<double> alpha;
  /// Set when selection weights were undefined and uniform weights were used.
  bool uniform_selection_fallback = false;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  double wall_ms = 0.0;
};

/// Tag of the stream split off the sampling stream to draw t*.
inline constexpr std::uint64_t kSelectionStreamTag = 0x5e1ec7;

/// x_{t+1} = prox_{alpha_t r}(x_t - alpha_t G(x_t, xi_t)), xi_t uniform over
/// the data; t* drawn with P(t* = t) proportional to alpha_t.
/// Throws DivergedRun when an iterate stops being finite.
RunRecord run_psg(const ProblemInstance& problem, const Regularizer& reg, const Schedule& schedule,
                  const Vector& x0, RngStream& rng, const RunOptions& options = {});

/// x_{t+1} = model_step(family, ..., x_t, xi_t, beta_t); t* drawn with
/// P(t* = t) proportional to 1 / (beta_t - eta).
RunRecord run_model_based(const ProblemInstance& problem, const Regularizer& reg,
                          ModelFamily family, const Schedule& schedule, const Vector& x0,
                          RngStream& rng, const RunOptions& options = {});

/// Draws t from `weights` and returns (t, x_t) from the retained trajectory.
std::pair<std::size_t, Vector> select_iterate(const RunRecord& record,
                                              const std::vector<double>& weights, RngStream& rng);

/// From the retained trajectory:
///   uniform          sum_t alpha_t x_{t+1} / sum_t alpha_t
///   strongly_convex  sum_{t=1}^{T+1} (t + 1) x_t * 2 / ((T + 2)(T + 3) - 2)
Vector weighted_average(const RunRecord& record, AveragingMode mode);

/// Coefficients of weighted_average for x_1..x_{T+1}.
std::vector<double> averaging_coefficients(AveragingMode mode, const std::vector<double>& alpha);

}  // namespace wcopt
