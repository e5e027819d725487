#include "wcopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "wcopt/cutting_plane.hpp"
#include "wcopt/error.hpp"
#include "wcopt/format.hpp"

namespace wcopt {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

// Golden-section search on [lo, hi]; returns the best point seen.
std::pair<double, double> golden(const std::function<double(double)>& f, double lo, double hi,
                                 std::size_t& evaluations) {
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  evaluations += 2;
  for (int iter = 0; iter < 80 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++iter) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
    ++evaluations;
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

void check_box(double lower, double upper, double resolution) {
  if (!(resolution > 0.0)) throw Error(Errc::invalid_argument, "grid_minimize: resolution must be positive");
  if (!std::isfinite(lower) || !std::isfinite(upper)) {
    throw Error(Errc::invalid_argument, "grid_minimize: box must be finite");
  }
  if (!(lower < upper)) throw Error(Errc::invalid_argument, "grid_minimize: empty box");
}

}  // namespace

GridResult1D golden_section_minimize(const std::function<double(double)>& objective, double lower,
                                     double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower <= upper)) {
    throw Error(Errc::invalid_argument, "golden_section_minimize: empty or infinite interval");
  }
  GridResult1D result;
  auto [y, v] = golden(objective, lower, upper, result.evaluations);
  for (double end : {lower, upper}) {
    const double ve = objective(end);
    ++result.evaluations;
    if (ve < v) {
      v = ve;
      y = end;
    }
  }
  result.argmin = y;
  result.value = v;
  return result;
}

GridResult1D grid_minimize(const std::function<double(double)>& objective, double lower,
                           double upper, double resolution, const GridOptions& options) {
  check_box(lower, upper, resolution);
  GridResult1D result;
  const double width = upper - lower;
  const auto cells = static_cast<std::size_t>(std::ceil(width / resolution));
  const double step = width / static_cast<double>(cells);

  if (!std::isfinite(options.lipschitz)) {
    result.value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= cells; ++k) {
      const double y = lower + step * static_cast<double>(k);
      const double v = objective(y);
      if (v < result.value) {
        result.value = v;
        result.argmin = y;
      }
    }
    result.evaluations = cells + 1;
  } else {
    // Branch and bound on intervals [center - half, center + half].
    std::size_t initial = std::min<std::size_t>(cells, 1024);
    double half = 0.5 * width / static_cast<double>(initial);
    std::vector<double> centers(initial);
    for (std::size_t k = 0; k < initial; ++k) centers[k] = lower + half * (2.0 * static_cast<double>(k) + 1.0);
    result.value = std::numeric_limits<double>::infinity();
    for (;;) {
      std::vector<double> values(centers.size());
      for (std::size_t k = 0; k < centers.size(); ++k) {
        values[k] = objective(centers[k]);
        if (values[k] < result.value) {
          result.value = values[k];
          result.argmin = centers[k];
        }
      }
      result.evaluations += centers.size();
      if (2.0 * half <= resolution) break;
      std::vector<double> next;
      for (std::size_t k = 0; k < centers.size(); ++k) {
        if (values[k] - options.lipschitz * half <= result.value) {
          next.push_back(centers[k] - 0.5 * half);
          next.push_back(centers[k] + 0.5 * half);
        }
      }
      centers = std::move(next);
      half *= 0.5;
    }
  }

  if (options.refine) {
    const double lo = std::max(lower, result.argmin - step);
    const double hi = std::min(upper, result.argmin + step);
    auto [y, v] = golden(objective, lo, hi, result.evaluations);
    if (v < result.value) {
      result.value = v;
      result.argmin = y;
    }
  }
  return result;
}

GridResult2D grid_minimize(const std::function<double(double, double)>& objective,
                           std::array<double, 2> lower, std::array<double, 2> upper,
                           double resolution, const GridOptions& options) {
  check_box(lower[0], upper[0], resolution);
  check_box(lower[1], upper[1], resolution);
  GridResult2D result;
  result.value = std::numeric_limits<double>::infinity();
  std::array<double, 2> step{};

  if (!std::isfinite(options.lipschitz)) {
    std::array<std::size_t, 2> cells{};
    for (int c = 0; c < 2; ++c) {
      cells[c] = static_cast<std::size_t>(std::ceil((upper[c] - lower[c]) / resolution));
      step[c] = (upper[c] - lower[c]) / static_cast<double>(cells[c]);
    }
    for (std::size_t i = 0; i <= cells[0]; ++i) {
      const double y0 = lower[0] + step[0] * static_cast<double>(i);
      for (std::size_t j = 0; j <= cells[1]; ++j) {
        const double y1 = lower[1] + step[1] * static_cast<double>(j);
        const double v = objective(y0, y1);
        if (v < result.value) {
          result.value = v;
          result.argmin = {y0, y1};
        }
      }
    }
    result.evaluations = (cells[0] + 1) * (cells[1] + 1);
  } else {
    // Branch and bound on square cells of side 2 * half.
    const double side = std::max(upper[0] - lower[0], upper[1] - lower[1]);
    std::size_t initial = std::max<std::size_t>(
        1, std::min<std::size_t>(256, static_cast<std::size_t>(std::ceil(side / resolution))));
    double half = 0.5 * side / static_cast<double>(initial);
    struct Cell {
      double c0, c1;
    };
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < initial; ++i) {
      for (std::size_t j = 0; j < initial; ++j) {
        cells.push_back({lower[0] + half * (2.0 * static_cast<double>(i) + 1.0),
                         lower[1] + half * (2.0 * static_cast<double>(j) + 1.0)});
      }
    }
    for (;;) {
      std::vector<double> values(cells.size());
      for (std::size_t k = 0; k < cells.size(); ++k) {
        // centers outside the box (from the square covering) are clamped
        const double y0 = std::clamp(cells[k].c0, lower[0], upper[0]);
        const double y1 = std::clamp(cells[k].c1, lower[1], upper[1]);
        values[k] = objective(y0, y1);
        if (values[k] < result.value) {
          result.value = values[k];
          result.argmin = {y0, y1};
        }
      }
      result.evaluations += cells.size();
      if (2.0 * half <= resolution) break;
      const double bound = options.lipschitz * half * std::sqrt(2.0) * 2.0;
      std::vector<Cell> next;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (values[k] - bound > result.value) continue;
        const double q = 0.5 * half;
        if (cells[k].c0 - half >= upper[0] || cells[k].c1 - half >= upper[1]) continue;
        next.push_back({cells[k].c0 - q, cells[k].c1 - q});
        next.push_back({cells[k].c0 + q, cells[k].c1 - q});
        next.push_back({cells[k].c0 - q, cells[k].c1 + q});
        next.push_back({cells[k].c0 + q, cells[k].c1 + q});
      }
      cells = std::move(next);
      half *= 0.5;
    }
    step = {2.0 * half, 2.0 * half};
  }

  if (options.refine) {
    for (int sweep = 0; sweep < 4; ++sweep) {
      for (int c = 0; c < 2; ++c) {
        auto line = [&](double t) {
          return c == 0 ? objective(t, result.argmin[1]) : objective(result.argmin[0], t);
        };
        const double lo = std::max(lower[c], result.argmin[c] - step[c]);
        const double hi = std::min(upper[c], result.argmin[c] + step[c]);
        auto [t, v] = golden(line, lo, hi, result.evaluations);
        if (v < result.value) {
          result.value = v;
          result.argmin[c] = t;
        }
      }
    }
  }
  return result;
}

GenericSolveResult generic_prox_subproblem_report(const SubproblemModel& model,
                                                  const Regularizer& reg, const Vector& base,
                                                  double beta, double tol,
                                                  Index regularized_dim) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "generic_prox_subproblem: tol must be positive");
  if (!(beta > model.eta)) {
    throw Error(Errc::nonconvex_subproblem,
                "generic_prox_subproblem: beta must exceed the model's weak convexity");
  }
  const Index n = base.size();
  const Index k = regularized_dim < 0 ? n : regularized_dim;
  const double modulus = beta - model.eta;

  auto head_value = [&](const Vector& y) { return reg.value(y.head(k)); };

  ConvexProblem problem;
  problem.strong_convexity = modulus;
  problem.value = [&](const Vector& y) {
    return model.value(y) + head_value(y) + 0.5 * beta * (y - base).squaredNorm();
  };
  problem.subgradient = [&](const Vector& y) {
    Vector g = model.subgradient(y) + beta * (y - base);
    g.head(k) += reg.subgradient(y.head(k));
    return g;
  };
  if (reg.is_indicator()) {
    problem.separate = [&](const Vector& y) -> std::optional<std::pair<Vector, double>> {
      const Vector head = y.head(k);
      if (reg.feasible(head)) return std::nullopt;
      Vector normal = Vector::Zero(n);
      normal.head(k) = head - reg.project(head);
      const double depth = normal.squaredNorm();
      return std::pair{normal, depth};
    };
  }

  Vector start = base;
  start.head(k) = reg.project(base.head(k));
  const Vector g0 = problem.subgradient(start);
  GenericSolveResult out;
  if (g0.squaredNorm() == 0.0) {
    out.argmin = start;
    out.value = problem.value(start);
    out.best_values = {out.value};
    return out;
  }
  const double radius = (g0.norm() / modulus) * (1.0 + 1e-9) + 1e-12;
  CuttingPlaneOptions options;
  options.tolerance = tol;
  options.record_trace = true;
  CuttingPlaneResult solved = minimize_cutting_plane(problem, start, radius, options);
  if (!solved.certified) {
    throw Error(Errc::tolerance_not_met,
                "generic_prox_subproblem: could not certify gap " + format_double(solved.gap) +
                    " after " + std::to_string(solved.iterations) + " iterations (n=" + std::to_string(n) + ")");
  }
  out.argmin = std::move(solved.argmin);
  out.value = solved.value;
  out.certified_gap = solved.gap;
  out.iterations = solved.iterations;
  out.best_values = std::move(solved.best_values);
  return out;
}

Vector generic_prox_subproblem(const SubproblemModel& model, const Regularizer& reg,
                               const Vector& base, double beta, double tol,
                               Index regularized_dim) {
  return generic_prox_subproblem_report(model, reg, base, beta, tol, regularized_dim).argmin;
}

double finite_difference_check(const std::function<double(const Vector&)>& objective,
                               const Vector& x, const Vector& v, double h) {
  if (!(h > 0.0)) throw Error(Errc::invalid_argument, "finite_difference_check: h must be positive");
  ensure_dimension(v, x.size(), "finite_difference_check");
  double worst = 0.0;
  Vector probe = x;
  for (Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = objective(probe);
    probe[i] = x[i] - h;
    const double down = objective(probe);
    probe[i] = x[i];
    worst = std::max(worst, std::abs((up - down) / (2.0 * h) - v[i]));
  }
  return worst;
}

}  // namespace wcopt
