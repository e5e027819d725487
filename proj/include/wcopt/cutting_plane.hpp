#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "wcopt/vector.hpp"

namespace wcopt {

/// A convex function given by value and subgradient oracles, optionally
/// restricted to a closed convex set described by a separation oracle.
struct ConvexProblem {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> subgradient;
  /// Returns nothing for feasible points, otherwise the pair (normal, depth)
  /// such that every feasible y satisfies <normal, y - z> <= -depth.
  std::function<std::optional<std::pair<Vector, double>>(const Vector&)> separate;
  /// Known strong convexity modulus (0 if unknown); tightens the lower bound.
  double strong_convexity = 0.0;
};

struct CuttingPlaneOptions {
  double tolerance = 1e-10;
  /// 0 selects 400 (n + 1)^2 + 1000.
  std::size_t max_iterations = 0;
  bool record_trace = false;
};

struct CuttingPlaneResult {
  Vector argmin;
  double value = 0.0;
  double lower_bound = 0.0;
  /// value - lower_bound: a certified bound on suboptimality.
  double gap = 0.0;
  std::size_t iterations = 0;
  bool certified = false;
  /// Best value after each iteration (only when record_trace is set).
  std::vector<double> best_values;
};

/// Deep-cut ellipsoid method started from the ball B(center, radius), which
/// must contain a minimizer. Every objective cut at a feasible center c with
/// subgradient g yields the lower bound F(c) - sqrt(g' P g), and with known
/// strong convexity mu also F(c) - |g|^2 / (2 mu); the run stops once the best
/// value is within `tolerance` of the best lower bound. In one dimension the
/// ellipsoid degenerates to an interval and the same cuts are applied to it.
CuttingPlaneResult minimize_cutting_plane(const ConvexProblem& problem, const Vector& center,
                                          double radius, const CuttingPlaneOptions& options = {});

}  // namespace wcopt
