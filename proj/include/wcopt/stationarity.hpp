#pragma once

#include <cstddef>
#include <functional>

#include "wcopt/problem.hpp"
#include "wcopt/regularizer.hpp"

namespace wcopt {

struct EnvelopeReport {
  double lambda = 0.0;
  /// min_y phi(y) + |y - x|^2 / (2 lambda), up to inner_suboptimality.
  double envelope_value = 0.0;
  /// The computed prox_{lambda phi}(x).
  Vector prox_point;
  /// |x - prox_point| / lambda.
  double grad_norm = 0.0;
  /// Certified bound on the inner objective gap at prox_point.
  double inner_suboptimality = 0.0;
  std::size_t inner_iterations = 0;
};

/// A rho-weakly convex f given by value and subgradient oracles.
struct WeaklyConvexFunction {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> subgradient;
  double rho = 0.0;
};

/// 1 / (2 rho), or 1/2 when the objective is convex.
double default_envelope_lambda(const ProblemInstance& problem);

/// Envelope of phi = f + r at x. The inner problem is (1/lambda - rho)
/// strongly convex and is solved with a certificate below `tol`.
/// Throws Errc::envelope_parameter unless 0 < lambda < 1/rho, and
/// Errc::tolerance_not_met if the certificate cannot be reached.
EnvelopeReport moreau_envelope(const ProblemInstance& problem, const Regularizer& reg,
                               const Vector& x, double lambda, double tol = 1e-8);

EnvelopeReport moreau_envelope(const WeaklyConvexFunction& f, const Regularizer& reg,
                               const Vector& x, double lambda, double tol = 1e-8);

struct SmoothFunction {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

/// (x - prox_{lambda r}(x - lambda grad f(x))) / lambda.
Vector prox_gradient_mapping(const SmoothFunction& f, const Regularizer& reg, const Vector& x,
                             double lambda);

}  // namespace wcopt
