#include "wcopt/cutting_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wcopt/error.hpp"

namespace wcopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tracker {
  Vector best_point;
  double best_value = kInf;
  double lower = -kInf;

  void offer(const Vector& y, double v) {
    if (v < best_value) {
      best_value = v;
      best_point = y;
    }
  }
};

CuttingPlaneResult finish(Tracker& tracker, std::size_t iterations, double tolerance,
                          std::vector<double> trace) {
  CuttingPlaneResult result;
  result.argmin = tracker.best_point;
  result.value = tracker.best_value;
  result.lower_bound = std::min(tracker.lower, tracker.best_value);
  result.gap = tracker.best_value - result.lower_bound;
  result.iterations = iterations;
  result.certified = std::isfinite(result.gap) && result.gap <= tolerance;
  result.best_values = std::move(trace);
  return result;
}

CuttingPlaneResult minimize_interval(const ConvexProblem& problem, double center, double radius,
                                     const CuttingPlaneOptions& options, std::size_t max_iter) {
  double lo = center - radius;
  double hi = center + radius;
  Tracker tracker;
  std::vector<double> trace;
  Vector point(1);
  std::size_t iter = 0;
  for (; iter < max_iter; ++iter) {
    const double c = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    point[0] = c;
    if (problem.separate) {
      if (auto cut = problem.separate(point)) {
        const double g = cut->first[0];
        if (g == 0.0) break;
        // keep { y : g (y - c) <= -depth }
        const double boundary = c - cut->second / g;
        if (g > 0) hi = std::min(hi, boundary); else lo = std::max(lo, boundary);
        if (lo > hi) break;
        if (options.record_trace) trace.push_back(tracker.best_value);
        continue;
      }
    }
    const double value = problem.value(point);
    tracker.offer(point, value);
    const double g = problem.subgradient(point)[0];
    double bound = value - std::abs(g) * half;
    if (problem.strong_convexity > 0) {
      bound = std::max(bound, value - g * g / (2.0 * problem.strong_convexity));
    }
    tracker.lower = std::max(tracker.lower, bound);
    if (options.record_trace) trace.push_back(tracker.best_value);
    if (tracker.best_value - tracker.lower <= options.tolerance) {
      ++iter;
      break;
    }
    if (g == 0.0) {
      tracker.lower = std::max(tracker.lower, value);
      ++iter;
      break;
    }
    // keep { y : value + g (y - c) <= best }
    const double boundary = c + (tracker.best_value - value) / g;
    if (g > 0) hi = std::min(hi, boundary); else lo = std::max(lo, boundary);
    if (!(lo <= hi)) {
      tracker.lower = std::max(tracker.lower, tracker.best_value);
      ++iter;
      break;
    }
  }
  if (!std::isfinite(tracker.best_value)) {
    point[0] = 0.5 * (lo + hi);
    tracker.best_point = point;
  }
  return finish(tracker, iter, options.tolerance, std::move(trace));
}

}  // namespace

CuttingPlaneResult minimize_cutting_plane(const ConvexProblem& problem, const Vector& center,
                                          double radius, const CuttingPlaneOptions& options) {
  const Index n = center.size();
  if (n < 1) throw Error(Errc::invalid_dimension, "minimize_cutting_plane: empty domain");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(Errc::invalid_argument, "minimize_cutting_plane: radius must be positive and finite");
  }
  const std::size_t max_iter = options.max_iterations > 0
                                   ? options.max_iterations
                                   : 400 * static_cast<std::size_t>((n + 1) * (n + 1)) + 1000;
  if (n == 1) return minimize_interval(problem, center[0], radius, options, max_iter);

  const double nd = static_cast<double>(n);
  Vector c = center;
  Matrix P = Matrix::Identity(n, n) * (radius * radius);
  Tracker tracker;
  std::vector<double> trace;
  std::size_t iter = 0;

  for (; iter < max_iter; ++iter) {
    Vector g;
    double alpha = 0.0;
    bool objective_cut = true;
    if (problem.separate) {
      if (auto cut = problem.separate(c)) {
        g = std::move(cut->first);
        const double width = std::sqrt(g.dot(P * g));
        if (!(width > 0.0) || !std::isfinite(width)) break;
        alpha = cut->second / width;
        objective_cut = false;
      }
    }
    if (objective_cut) {
      const double value = problem.value(c);
      tracker.offer(c, value);
      g = problem.subgradient(c);
      const double width = std::sqrt(std::max(0.0, g.dot(P * g)));
      double bound = value - width;
      if (problem.strong_convexity > 0) {
        bound = std::max(bound, value - g.squaredNorm() / (2.0 * problem.strong_convexity));
      }
      tracker.lower = std::max(tracker.lower, bound);
      if (options.record_trace) trace.push_back(tracker.best_value);
      if (tracker.best_value - tracker.lower <= options.tolerance) {
        ++iter;
        break;
      }
      if (!(width > 0.0) || !std::isfinite(width)) {
        if (g.squaredNorm() == 0.0) tracker.lower = std::max(tracker.lower, value);
        ++iter;
        break;
      }
      // the cut value + <g, y - c> <= best is valid because best >= min
      alpha = (value - tracker.best_value) / width;
    } else if (options.record_trace) {
      trace.push_back(tracker.best_value);
    }

    if (alpha >= 1.0) {
      // the remaining ellipsoid lies above the incumbent: it is optimal
      if (objective_cut) tracker.lower = std::max(tracker.lower, tracker.best_value);
      ++iter;
      break;
    }
    const Vector Pg = P * g;
    const double width = std::sqrt(g.dot(Pg));
    const Vector b = Pg / width;
    c -= ((1.0 + nd * alpha) / (nd + 1.0)) * b;
    P = (nd * nd * (1.0 - alpha * alpha) / (nd * nd - 1.0)) *
        (P - (2.0 * (1.0 + nd * alpha) / ((nd + 1.0) * (1.0 + alpha))) * (b * b.transpose()));
    P = 0.5 * (P + P.transpose()).eval();
    if (!P.allFinite() || !c.allFinite()) break;
  }
  if (!std::isfinite(tracker.best_value)) tracker.best_point = c;
  return finish(tracker, iter, options.tolerance, std::move(trace));
}

}  // namespace wcopt
