#pragma once

#include <string_view>

#include "wcopt/oracle.hpp"
#include "wcopt/problem.hpp"
#include "wcopt/regularizer.hpp"

namespace wcopt {

/// The stochastic one-sided models f_x(y, xi):
///
///   linear       f(x, xi) + <G(x, xi), y - x>
///   prox_linear  h(c(x, xi) + grad c(x, xi)(y - x)), the inner map linearized
///   prox_point   f(y, xi) itself
///
/// Config strings are "sgd", "prox-linear" and "prox-point".
enum class ModelFamily { linear, prox_linear, prox_point };

std::string_view to_string(ModelFamily family);
ModelFamily parse_model_family(std::string_view tag);

/// The instance constants with tau and eta specialized to the family:
///   linear       tau = rho, eta = 0
///   prox_linear  tau = sqrt(mean of squared per-datum Jacobian moduli), eta = 0
///   prox_point   tau = 0, eta = rho
/// rho_bar is raised if needed to keep rho_bar > tau + eta.
TheoreticalConstants model_constants(ModelFamily family, const ProblemInstance& problem);

/// f_base(y, xi_sample).
double model_value(ModelFamily family, const ProblemInstance& problem, const Vector& base,
                   Index sample, const Vector& y);

/// The model as value and subgradient callables, for the generic solver.
SubproblemModel make_subproblem_model(ModelFamily family, const ProblemInstance& problem,
                                      const Vector& base, Index sample);

/// r(y) + f_base(y, xi) + (beta/2)|y - base|^2.
double subproblem_value(ModelFamily family, const ProblemInstance& problem, const Regularizer& reg,
                        const Vector& base, Index sample, double beta, const Vector& y);

struct StepOptions {
  /// Reject beta <= eta. The closed forms enumerate every critical point and
  /// stay exact below that threshold, so sweeps over wide step-size grids
  /// switch this off.
  bool require_convex_subproblem = true;
  /// Certificate used when the generic solver handles the step.
  double generic_tol = 1e-10;
};

/// argmin_y r(y) + f_base(y, xi) + (beta/2)|y - base|^2.
///
/// Closed forms cover the linear family with every regularizer, the
/// prox-linear and proximal-point families on every kind with the zero and
/// squared-l2 regularizers (the latter folded into the quadratic), and the
/// prox-linear family on cvar with every regularizer. Other combinations use
/// the generic solver, which requires a strongly convex subproblem.
Vector model_step(ModelFamily family, const ProblemInstance& problem, const Regularizer& reg,
                  const Vector& base, Index sample, double beta, const StepOptions& options = {});

}  // namespace wcopt
