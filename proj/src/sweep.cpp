#include "wcopt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

#include "wcopt/algorithms.hpp"
#include "wcopt/error.hpp"
#include "wcopt/format.hpp"

namespace wcopt {

namespace {

constexpr std::uint64_t kInstanceTag = 0x1257a9ce;
constexpr std::uint64_t kCellTag = 0xce11;

std::uint64_t method_code(ModelFamily method) { return static_cast<std::uint64_t>(method); }

struct RoundData {
  ProblemInstance problem;
  Vector x0;
};

RoundData make_round(const ProblemSpec& spec, std::uint64_t seed, std::size_t round) {
  RngStream rng(seed, instance_stream_id(round));
  RoundData data;
  data.problem = generate_instance(spec, rng);
  data.x0 = initial_point(spec, rng);
  set_initial_point(data.problem, data.x0);
  return data;
}

RunRecord run_method(ModelFamily method, const ProblemInstance& problem, const Regularizer& reg,
                     double stepsize, std::size_t epochs, const Vector& x0, RngStream& rng) {
  const std::size_t steps = epochs * static_cast<std::size_t>(problem.m());
  ScheduleParams params;
  params.custom_beta.assign(steps, 1.0 / stepsize);
  const Schedule schedule = make_schedule(ScheduleKind::custom, params, steps - 1);
  RunOptions options;
  options.step.require_convex_subproblem = false;
  if (method == ModelFamily::linear) return run_psg(problem, reg, schedule, x0, rng, options);
  return run_model_based(problem, reg, method, schedule, x0, rng, options);
}

template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= count || failed.load()) return;
        try {
          fn(k);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::uint64_t instance_stream_id(std::size_t round) { return derive_stream_id({kInstanceTag, round}); }

std::uint64_t cell_stream_id(ModelFamily method, std::size_t grid_index, std::size_t round) {
  return derive_stream_id({kCellTag, method_code(method), grid_index, round});
}

std::size_t sweep_thread_count() {
  if (const char* env = std::getenv("WCOPT_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult run_sweep(const SweepConfig& config, std::size_t threads) {
  if (threads == 0) threads = sweep_thread_count();
  const std::vector<double> grid = config.stepsize.values();

  std::vector<RoundData> rounds(config.rounds);
  parallel_for(config.rounds, threads, [&](std::size_t r) { rounds[r] = make_round(config.problem, config.seed, r); });
  const Index dim = rounds.front().problem.dim();
  if (config.regularizer.kind() == RegularizerKind::box && config.regularizer.lower().size() != dim) {
    throw ConfigError("regularizer.lower", "box bounds must match the problem dimension");
  }

  SweepResult result;
  result.seed = config.seed;
  for (ModelFamily method : config.methods) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      for (std::size_t r = 0; r < config.rounds; ++r) {
        SweepCell cell;
        cell.method = method;
        cell.grid_index = g;
        cell.stepsize = grid[g];
        cell.round = r;
        cell.stream_id = cell_stream_id(method, g, r);
        result.cells.push_back(cell);
      }
    }
  }

  parallel_for(result.cells.size(), threads, [&](std::size_t k) {
    SweepCell& cell = result.cells[k];
    const RoundData& data = rounds[cell.round];
    RngStream rng(config.seed, cell.stream_id);
    try {
      const RunRecord record = run_method(cell.method, data.problem, config.regularizer, cell.stepsize,
                                          config.epochs, data.x0, rng);
      cell.final_gap = record.final_objective;
      for (std::size_t e = 0; e < record.objective_per_epoch.size(); ++e) {
        if (record.objective_per_epoch[e] <= config.target) {
          cell.epochs_to_target = e;
          break;
        }
      }
      if (config.timing) cell.wall_ms = record.wall_ms;
    } catch (const DivergedRun&) {
      cell.diverged = true;
      cell.final_gap = std::numeric_limits<double>::infinity();
    }
  });

  for (std::size_t start = 0; start < result.cells.size(); start += config.rounds) {
    const SweepCell& first = result.cells[start];
    SweepSummary s;
    s.method = first.method;
    s.grid_index = first.grid_index;
    s.stepsize = first.stepsize;
    double gap_sum = 0.0;
    double epoch_sum = 0.0;
    std::size_t reached_rounds = 0;
    for (std::size_t r = 0; r < config.rounds; ++r) {
      const SweepCell& c = result.cells[start + r];
      gap_sum += c.final_gap;
      if (c.epochs_to_target) {
        epoch_sum += static_cast<double>(*c.epochs_to_target);
        ++reached_rounds;
      }
    }
    s.mean_final_gap = gap_sum / static_cast<double>(config.rounds);
    if (reached_rounds > 0) s.mean_epochs_to_target = epoch_sum / static_cast<double>(reached_rounds);
    s.reached = s.mean_final_gap <= config.target;
    result.summaries.push_back(s);
  }

  if (!config.output.empty()) {
    std::ofstream out(config.output, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write sweep output '" + config.output + "'");
    write_sweep_csv(out, result);
    if (!out) throw Error(Errc::io_error, "failed writing sweep output '" + config.output + "'");
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "method,stepsize,round,final_gap,epochs_to_target,wall_ms,seed\n";
  const std::string seed = std::to_string(result.seed);
  std::size_t cell = 0;
  for (const SweepSummary& s : result.summaries) {
    while (cell < result.cells.size() && result.cells[cell].method == s.method &&
           result.cells[cell].grid_index == s.grid_index) {
      const SweepCell& c = result.cells[cell];
      out << to_string(c.method) << ',' << format_double(c.stepsize) << ',' << c.round << ','
          << format_double(c.final_gap) << ','
          << (c.epochs_to_target ? std::to_string(*c.epochs_to_target) : std::string("NA")) << ','
          << (c.wall_ms ? format_double(*c.wall_ms) : std::string()) << ',' << seed << '\n';
      ++cell;
    }
    out << to_string(s.method) << ',' << format_double(s.stepsize) << ",summary,"
        << format_double(s.mean_final_gap) << ','
        << (s.mean_epochs_to_target ? format_double(*s.mean_epochs_to_target) : std::string("NA"))
        << ",," << seed << '\n';
  }
}

std::size_t count_reached(const SweepResult& result, ModelFamily method) {
  return static_cast<std::size_t>(std::count_if(result.summaries.begin(), result.summaries.end(),
                                                [&](const SweepSummary& s) { return s.method == method && s.reached; }));
}

std::vector<TraceRow> run_envelope_trace(const ProblemSpec& problem, ModelFamily method,
                                         double stepsize, std::size_t epochs,
                                         const std::vector<std::size_t>& checkpoints,
                                         std::uint64_t seed, const TraceOptions& options) {
  if (!(stepsize > 0.0)) throw Error(Errc::invalid_argument, "trace: stepsize must be positive");
  if (epochs < 1) throw Error(Errc::invalid_argument, "trace: epochs must be >= 1");
  for (std::size_t c : checkpoints) {
    if (c > epochs) throw Error(Errc::invalid_argument, "trace: checkpoint beyond the last epoch");
  }
  RoundData data = make_round(problem, seed, 0);
  if (options.start_at_ground_truth) {
    data.x0 = data.problem.ground_truth;
    set_initial_point(data.problem, data.x0);
  }
  RngStream rng(seed, cell_stream_id(method, 0, 0));
  const Regularizer reg = Regularizer::zero();
  const RunRecord record = run_method(method, data.problem, reg, stepsize, epochs, data.x0, rng);
  const double lambda = default_envelope_lambda(data.problem);
  std::vector<TraceRow> rows(checkpoints.size());
  parallel_for(checkpoints.size(), sweep_thread_count(), [&](std::size_t k) {
    rows[k].epoch = checkpoints[k];
    rows[k].report = moreau_envelope(data.problem, reg, record.epoch_iterates[checkpoints[k]], lambda,
                                     options.inner_tol);
  });
  return rows;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "epoch,lambda,envelope_value,grad_norm,inner_suboptimality\n";
  for (const TraceRow& row : rows) {
    out << row.epoch << ',' << format_double(row.report.lambda) << ','
        << format_double(row.report.envelope_value) << ',' << format_double(row.report.grad_norm) << ','
        << format_double(row.report.inner_suboptimality) << '\n';
  }
}

}  // namespace wcopt
