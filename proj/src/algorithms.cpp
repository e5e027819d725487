#include "wcopt/algorithms.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <span>

#include "wcopt/error.hpp"
#include "wcopt/format.hpp"

namespace wcopt {

namespace {

std::vector<double> normalized(std::vector<double> w) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

}  // namespace

std::vector<double> Schedule::psg_weights() const { return normalized(alpha); }

std::vector<double> Schedule::model_weights(double eta) const {
  std::vector<double> w;
  w.reserve(beta.size());
  for (double b : beta) {
    if (!(b > eta)) return {};
    w.push_back(1.0 / (b - eta));
  }
  return normalized(std::move(w));
}

Schedule make_schedule(ScheduleKind kind, const ScheduleParams& params, std::size_t horizon) {
  if (horizon == 0) throw Error(Errc::invalid_argument, "schedule: T must be positive");
  Schedule s;
  s.kind = kind;
  s.horizon = horizon;
  const std::size_t n = horizon + 1;
  const double root = std::sqrt(static_cast<double>(n));
  auto need_gamma = [&] {
    if (!(params.gamma > 0.0) || !std::isfinite(params.gamma)) {
      throw Error(Errc::invalid_argument, "schedule: gamma must be positive");
    }
  };
  switch (kind) {
    case ScheduleKind::constant_alpha: {
      need_gamma();
      const double a = params.gamma / root;
      s.alpha.assign(n, a);
      s.beta.assign(n, 1.0 / a);
      break;
    }
    case ScheduleKind::constant_beta: {
      need_gamma();
      if (!(params.rho_bar >= 0.0)) throw Error(Errc::invalid_argument, "schedule: rho_bar must be >= 0");
      const double b = params.rho_bar + root / params.gamma;
      s.beta.assign(n, b);
      s.alpha.assign(n, 1.0 / b);
      break;
    }
    case ScheduleKind::strongly_convex: {
      if (!(params.mu > 0.0) || !std::isfinite(params.mu)) {
        throw Error(Errc::invalid_argument, "schedule: mu must be positive");
      }
      for (std::size_t t = 0; t < n; ++t) {
        const double b = params.mu * static_cast<double>(t + 1) / 2.0;
        s.beta.push_back(b);
        s.alpha.push_back(1.0 / b);
      }
      break;
    }
    case ScheduleKind::custom: {
      if (params.custom_beta.size() != n) {
        throw Error(Errc::invalid_argument, "schedule: custom sequence must have T + 1 entries");
      }
      for (double b : params.custom_beta) {
        if (!(b > 0.0) || !std::isfinite(b)) {
          throw Error(Errc::invalid_argument, "schedule: custom beta entries must be positive");
        }
        s.beta.push_back(b);
        s.alpha.push_back(1.0 / b);
      }
      break;
    }
  }
  if (kind != ScheduleKind::strongly_convex && kind != ScheduleKind::custom && params.rho > 0.0 &&
      params.gamma > 1.0 / (2.0 * params.rho) && !params.allow_large_gamma) {
    s.warnings.push_back("gamma " + format_double(params.gamma) + " exceeds 1/(2 rho) = " +
                         format_double(1.0 / (2.0 * params.rho)));
  }
  return s;
}

std::vector<double> averaging_coefficients(AveragingMode mode, const std::vector<double>& alpha) {
  const std::size_t n = alpha.size();
  std::vector<double> c(n, 0.0);
  switch (mode) {
    case AveragingMode::none: break;
    case AveragingMode::uniform: c = normalized(alpha); break;
    case AveragingMode::strongly_convex: {
      const double t_big = static_cast<double>(n) - 1.0;
      const double norm = 2.0 / ((t_big + 2.0) * (t_big + 3.0) - 2.0);
      for (std::size_t k = 0; k < n; ++k) c[k] = norm * static_cast<double>(k + 2);
      break;
    }
  }
  return c;
}

namespace {

using StepFn = std::function<Vector(const Vector&, Index, std::size_t)>;

RunRecord run_loop(const ProblemInstance& p, const Regularizer& reg, const Schedule& schedule,
                   const Vector& x0, RngStream& rng, const RunOptions& options,
                   std::vector<double> weights, const StepFn& step) {
  ensure_dimension(x0, p.dim(), "run x0");
  ensure_finite(x0, "run x0");
  const std::size_t steps = schedule.steps();
  if (steps == 0) throw Error(Errc::empty_trajectory, "run: schedule has no steps");
  const auto start = std::chrono::steady_clock::now();

  RunRecord rec;
  rec.seed = rng.seed();
  rec.stream_id = rng.stream_id();
  rec.averaging = options.averaging;
  rec.alpha = schedule.alpha;
  if (weights.empty()) {
    weights.assign(steps, 1.0 / static_cast<double>(steps));
    rec.uniform_selection_fallback = true;
  }
  RngStream selector = rng.split(kSelectionStreamTag);
  rec.t_star = sample_categorical(std::span<const double>(weights), selector);

  const std::size_t per_epoch = options.steps_per_epoch > 0 ? options.steps_per_epoch
                                                            : static_cast<std::size_t>(p.m());
  auto phi = [&](const Vector& x) { return objective_value(p, x) + regularizer_value(p, reg, x); };

  const std::vector<double> coeffs = averaging_coefficients(options.averaging, schedule.alpha);
  if (options.averaging != AveragingMode::none) rec.averaged_iterate = Vector::Zero(p.dim());

  Vector x = x0;
  rec.epoch_iterates.push_back(x);
  rec.objective_per_epoch.push_back(phi(x));
  if (options.retain_trajectory) {
    rec.trajectory.reserve(steps + 1);
    rec.trajectory.push_back(x);
  }
  if (rec.t_star == 0) rec.x_star = x;
  const auto m = static_cast<std::uint64_t>(p.m());
  for (std::size_t t = 0; t < steps; ++t) {
    const auto datum = static_cast<Index>(rng.uniform_index(m));
    x = step(x, datum, t);
    if (!x.allFinite()) {
      throw DivergedRun(t, "run diverged at step " + std::to_string(t));
    }
    if (options.averaging != AveragingMode::none) rec.averaged_iterate += coeffs[t] * x;
    if (options.retain_trajectory) rec.trajectory.push_back(x);
    if (t + 1 == rec.t_star) rec.x_star = x;
    if ((t + 1) % per_epoch == 0) {
      const double value = phi(x);
      if (!std::isfinite(value)) throw DivergedRun(t, "objective diverged at step " + std::to_string(t));
      rec.epoch_iterates.push_back(x);
      rec.objective_per_epoch.push_back(value);
    }
  }
  rec.final_iterate = x;
  rec.final_objective = steps % per_epoch == 0 ? rec.objective_per_epoch.back() : phi(x);
  if (!std::isfinite(rec.final_objective)) throw DivergedRun(steps - 1, "objective diverged");
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

RunRecord run_psg(const ProblemInstance& p, const Regularizer& reg, const Schedule& schedule,
                  const Vector& x0, RngStream& rng, const RunOptions& options) {
  return run_loop(p, reg, schedule, x0, rng, options, schedule.psg_weights(),
                  [&](const Vector& x, Index datum, std::size_t t) {
                    const double alpha = schedule.alpha[t];
                    const Vector g = stochastic_subgradient(p, x, datum).vector;
                    return regularizer_prox(p, reg, x - alpha * g, alpha);
                  });
}

RunRecord run_model_based(const ProblemInstance& p, const Regularizer& reg, ModelFamily family,
                          const Schedule& schedule, const Vector& x0, RngStream& rng,
                          const RunOptions& options) {
  const double eta = std::max(0.0, model_constants(family, p).eta - reg.strong_convexity());
  return run_loop(p, reg, schedule, x0, rng, options, schedule.model_weights(eta),
                  [&](const Vector& x, Index datum, std::size_t t) {
                    return model_step(family, p, reg, x, datum, schedule.beta[t], options.step);
                  });
}

std::pair<std::size_t, Vector> select_iterate(const RunRecord& record,
                                              const std::vector<double>& weights, RngStream& rng) {
  if (record.trajectory.empty()) throw Error(Errc::empty_trajectory, "select_iterate: empty trajectory");
  if (weights.empty() || weights.size() > record.trajectory.size()) {
    throw Error(Errc::dimension_mismatch, "select_iterate: one weight per selectable iterate");
  }
  const std::size_t t = sample_categorical(std::span<const double>(weights), rng);
  return {t, record.trajectory[t]};
}

Vector weighted_average(const RunRecord& record, AveragingMode mode) {
  if (record.trajectory.size() < 2 || record.trajectory.size() != record.alpha.size() + 1) {
    throw Error(Errc::trajectory_not_retained, "weighted_average: the full trajectory was not retained");
  }
  if (mode == AveragingMode::none) throw Error(Errc::invalid_argument, "weighted_average: no mode");
  const std::vector<double> c = averaging_coefficients(mode, record.alpha);
  Vector out = Vector::Zero(record.trajectory.front().size());
  for (std::size_t k = 0; k < c.size(); ++k) out += c[k] * record.trajectory[k + 1];
  return out;
}

}  // namespace wcopt
