#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "wcopt/config.hpp"
#include "wcopt/stationarity.hpp"

namespace wcopt {

struct SweepCell {
  ModelFamily method = ModelFamily::linear;
  std::size_t grid_index = 0;
  double stepsize = 0.0;
  std::size_t round = 0;
  /// Final objective minus the optimum 0; +inf for a diverged run.
  double final_gap = 0.0;
  /// First logged epoch with gap <= target.
  std::optional<std::size_t> epochs_to_target;
  bool diverged = false;
  std::optional<double> wall_ms;
  std::uint64_t stream_id = 0;
};

struct SweepSummary {
  ModelFamily method = ModelFamily::linear;
  std::size_t grid_index = 0;
  double stepsize = 0.0;
  double mean_final_gap = 0.0;
  /// Mean over the rounds that reached the target.
  std::optional<double> mean_epochs_to_target;
  /// The mean run reaches the target: mean_final_gap <= target.
  bool reached = false;
};

struct SweepResult {
  std::vector<SweepCell> cells;        // ordered by (method, grid index, round)
  std::vector<SweepSummary> summaries;  // ordered by (method, grid index)
  std::uint64_t seed = 0;
};

/// Stream of the round's instance and initial point.
std::uint64_t instance_stream_id(std::size_t round);
/// Sampling stream of one cell; a pure function of its coordinates.
std::uint64_t cell_stream_id(ModelFamily method, std::size_t grid_index, std::size_t round);

/// Worker threads: WCOPT_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
std::size_t sweep_thread_count();

/// Runs every (method, step size, round) cell. Each run takes epochs * m
/// single-sample steps with beta = 1/stepsize. Diverged runs are recorded
/// with final_gap = inf. Writes the CSV to config.output when it is set.
SweepResult run_sweep(const SweepConfig& config, std::size_t threads = 0);

/// Header: method,stepsize,round,final_gap,epochs_to_target,wall_ms,seed.
/// Each (method, stepsize) group lists its rounds followed by one row with
/// round "summary". Missing values are written as NA (epochs) or left empty
/// (wall_ms).
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// Number of grid points whose mean run reaches the target, per method.
std::size_t count_reached(const SweepResult& result, ModelFamily method);

struct TraceOptions {
  double inner_tol = 1e-8;
  /// Start from the planted solution instead of a random point.
  bool start_at_ground_truth = false;
};

struct TraceRow {
  std::size_t epoch = 0;
  EnvelopeReport report;
};

/// Runs one method at one step size on the round-0 instance of the preset and
/// evaluates the envelope at lambda = 1/(2 rho) at the listed epochs.
std::vector<TraceRow> run_envelope_trace(const ProblemSpec& problem, ModelFamily method,
                                         double stepsize, std::size_t epochs,
                                         const std::vector<std::size_t>& checkpoints,
                                         std::uint64_t seed, const TraceOptions& options = {});

/// Header: epoch,lambda,envelope_value,grad_norm,inner_suboptimality.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);

}  // namespace wcopt
