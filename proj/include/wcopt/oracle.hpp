#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "wcopt/regularizer.hpp"
#include "wcopt/vector.hpp"

namespace wcopt {

/// Outcome of checking one operation against its brute-force counterpart.
struct OracleReport {
  std::string op_name;
  std::size_t instances_checked = 0;
  double max_abs_error = 0.0;
  std::string worst_instance;
  double tolerance = 0.0;
  bool passed = true;
};

struct GridOptions {
  /// Lipschitz bound on the box. When finite, lattice cells whose center
  /// value minus L * (half diagonal) exceeds the incumbent are pruned, which
  /// is exact for L-Lipschitz objectives; when infinite every lattice point
  /// is evaluated.
  double lipschitz = std::numeric_limits<double>::infinity();
  /// Golden-section (1-D) or coordinate golden-section (2-D) polish inside
  /// the winning cell.
  bool refine = true;
};

struct GridResult1D {
  double argmin = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
};

struct GridResult2D {
  std::array<double, 2> argmin{};
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Golden-section search for a unimodal objective on [lower, upper].
GridResult1D golden_section_minimize(const std::function<double(double)>& objective, double lower,
                                     double upper);

GridResult1D grid_minimize(const std::function<double(double)>& objective, double lower,
                           double upper, double resolution, const GridOptions& options = {});

GridResult2D grid_minimize(const std::function<double(double, double)>& objective,
                           std::array<double, 2> lower, std::array<double, 2> upper,
                           double resolution, const GridOptions& options = {});

/// A model y -> f_x(y, xi) supplied as value and subgradient callables. The
/// sum model + r is eta-weakly convex.
struct SubproblemModel {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> subgradient;
  double eta = 0.0;
};

struct GenericSolveResult {
  Vector argmin;
  double value = 0.0;
  double certified_gap = 0.0;
  std::size_t iterations = 0;
  /// Incumbent value after each iteration; non-increasing.
  std::vector<double> best_values;
};

/// Certified solve of argmin_y model(y) + r(y) + (beta/2)|y - base|^2 through
/// the cutting-plane method. The regularizer acts on the first
/// `regularized_dim` coordinates (all when negative). Requires beta > eta.
/// Throws Errc::nonconvex_subproblem if beta <= eta and
/// Errc::tolerance_not_met if the gap cannot be certified below `tol`.
GenericSolveResult generic_prox_subproblem_report(const SubproblemModel& model,
                                                  const Regularizer& reg, const Vector& base,
                                                  double beta, double tol,
                                                  Index regularized_dim = -1);

Vector generic_prox_subproblem(const SubproblemModel& model, const Regularizer& reg,
                               const Vector& base, double beta, double tol,
                               Index regularized_dim = -1);

/// max_e |(g(x + h e) - g(x - h e)) / (2h) - <v, e>| over coordinate directions.
double finite_difference_check(const std::function<double(const Vector&)>& objective,
                               const Vector& x, const Vector& v, double h);

}  // namespace wcopt
