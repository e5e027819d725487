#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wcopt/config.hpp"
#include "wcopt/error.hpp"
#include "wcopt/sweep.hpp"
#include "wcopt/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kVerification = 2;
constexpr int kRuntime = 3;

// Writes to `path`, or to stdout when it is empty or "-".
template <class Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wcopt::Error(wcopt::Errc::io_error, "cannot write '" + path + "'");
  write(out);
  if (!out) throw wcopt::Error(wcopt::Errc::io_error, "failed writing '" + path + "'");
}

bool is_validation(wcopt::Errc code) {
  switch (code) {
    case wcopt::Errc::invalid_argument:
    case wcopt::Errc::invalid_dimension:
    case wcopt::Errc::dimension_mismatch:
    case wcopt::Errc::config_error:
    case wcopt::Errc::envelope_parameter:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic model-based minimization of weakly convex functions"};
  app.require_subcommand(1);

  std::string preset = "phase-10-30";
  std::uint64_t seed = 1;
  std::string out;

  auto* generate = app.add_subcommand("generate", "Generate a problem instance file");
  std::size_t round = 0;
  generate->add_option("--preset", preset, "Problem preset")->capture_default_str();
  generate->add_option("--seed", seed, "Master seed")->capture_default_str();
  generate->add_option("--round", round, "Round whose instance to write")->capture_default_str();
  generate->add_option("--out", out, "Output path (stdout if omitted)");

  auto* sweep = app.add_subcommand("sweep", "Run a step-size sweep and write its CSV");
  std::string config_path;
  std::optional<std::uint64_t> sweep_seed;
  std::optional<std::string> sweep_preset;
  std::size_t threads = 0;
  sweep->add_option("--config", config_path, "JSON config file (defaults when omitted)");
  sweep->add_option("--seed", sweep_seed, "Override the master seed");
  sweep->add_option("--preset", sweep_preset, "Override the problem preset");
  sweep->add_option("--out", out, "Override the CSV output path");
  sweep->add_option("--threads", threads, "Worker threads (default: WCOPT_THREADS or all cores)");

  auto* trace = app.add_subcommand("trace", "Moreau envelope gradient along one run");
  std::string method = "prox-linear";
  double stepsize = 0.1;
  std::size_t epochs = 100;
  std::vector<std::size_t> checkpoints;
  bool ground_truth = false;
  double inner_tol = 1e-8;
  trace->add_option("--preset", preset, "Problem preset")->capture_default_str();
  trace->add_option("--method", method, "sgd, prox-linear or prox-point")->capture_default_str();
  trace->add_option("--stepsize", stepsize, "Step size 1/beta")->capture_default_str();
  trace->add_option("--epochs", epochs, "Epochs to run")->capture_default_str();
  trace->add_option("--checkpoints", checkpoints, "Epochs at which to evaluate (default: every epoch)")
      ->delimiter(',');
  trace->add_option("--seed", seed, "Master seed")->capture_default_str();
  trace->add_option("--tol", inner_tol, "Inner solve certificate")->capture_default_str();
  trace->add_flag("--ground-truth", ground_truth, "Start at the planted solution");
  trace->add_option("--out", out, "Output path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "Check every closed form against its oracle");
  std::string fault = "none";
  double scale = 1.0;
  std::uint64_t verify_seed = 7;
  verify->add_option("--fault", fault, "Inject a fault fixture")->capture_default_str();
  verify->add_option("--scale", scale, "Scale the instance counts")->capture_default_str();
  verify->add_option("--seed", verify_seed, "Seed of the random instances")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*generate) {
      const wcopt::ProblemSpec spec = wcopt::parse_preset(preset);
      wcopt::RngStream rng(seed, wcopt::instance_stream_id(round));
      const wcopt::ProblemInstance problem = wcopt::generate_instance(spec, rng);
      emit(out, [&](std::ostream& os) { wcopt::write_instance(os, problem); });
      return kOk;
    }
    if (*sweep) {
      wcopt::SweepConfig config = config_path.empty() ? wcopt::SweepConfig{} : wcopt::load_config(config_path);
      if (sweep_seed) config.seed = *sweep_seed;
      if (sweep_preset) config.problem = wcopt::parse_preset(*sweep_preset);
      if (!out.empty()) config.output = out;
      const bool to_stdout = config.output.empty() || config.output == "-";
      if (to_stdout) config.output.clear();
      const wcopt::SweepResult result = wcopt::run_sweep(config, threads);
      if (to_stdout) {
        wcopt::write_sweep_csv(std::cout, result);
      }
      std::ostream& log = to_stdout ? std::cerr : std::cout;
      for (wcopt::ModelFamily m : config.methods) {
        log << wcopt::to_string(m) << ": " << wcopt::count_reached(result, m) << " of "
            << config.stepsize.count << " step sizes reach " << config.target << '\n';
      }
      return kOk;
    }
    if (*trace) {
      const wcopt::ProblemSpec spec = wcopt::parse_preset(preset);
      if (checkpoints.empty()) {
        for (std::size_t e = 0; e <= epochs; ++e) checkpoints.push_back(e);
      }
      wcopt::TraceOptions options;
      options.inner_tol = inner_tol;
      options.start_at_ground_truth = ground_truth;
      const auto rows = wcopt::run_envelope_trace(spec, wcopt::parse_model_family(method), stepsize, epochs,
                                                  checkpoints, seed, options);
      emit(out, [&](std::ostream& os) { wcopt::write_trace_csv(os, rows); });
      return kOk;
    }
    if (*verify) {
      wcopt::VerifyOptions options;
      options.fault = wcopt::parse_fault(fault);
      options.scale = scale;
      options.seed = verify_seed;
      const wcopt::VerifySummary summary = wcopt::verify_all(options);
      wcopt::write_verify_summary(std::cout, summary);
      return summary.passed ? kOk : kVerification;
    }
  } catch (const wcopt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_validation(e.code()) ? kValidation : kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
