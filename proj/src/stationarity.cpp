#include "wcopt/stationarity.hpp"

#include <cmath>
#include <string>

#include "wcopt/error.hpp"
#include "wcopt/format.hpp"
#include "wcopt/oracle.hpp"

namespace wcopt {

double default_envelope_lambda(const ProblemInstance& problem) {
  return problem.constants.rho > 0.0 ? 1.0 / (2.0 * problem.constants.rho) : 0.5;
}

namespace {

EnvelopeReport envelope(const SubproblemModel& model, const Regularizer& reg, const Vector& x,
                        double lambda, double tol, Index regularized_dim) {
  const double rho = model.eta;
  if (!(lambda > 0.0) || !std::isfinite(lambda) || (rho > 0.0 && !(lambda * rho < 1.0))) {
    throw Error(Errc::envelope_parameter, "moreau_envelope: lambda " + format_double(lambda) +
                                              " must lie in (0, 1/rho) with rho = " + format_double(rho));
  }
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "moreau_envelope: tol must be positive");
  ensure_finite(x, "moreau_envelope");
  const GenericSolveResult solved =
      generic_prox_subproblem_report(model, reg, x, 1.0 / lambda, tol, regularized_dim);
  EnvelopeReport report;
  report.lambda = lambda;
  report.envelope_value = solved.value;
  report.prox_point = solved.argmin;
  report.grad_norm = (x - solved.argmin).norm() / lambda;
  report.inner_suboptimality = solved.certified_gap;
  report.inner_iterations = solved.iterations;
  return report;
}

}  // namespace

EnvelopeReport moreau_envelope(const ProblemInstance& problem, const Regularizer& reg,
                               const Vector& x, double lambda, double tol) {
  ensure_dimension(x, problem.dim(), "moreau_envelope");
  SubproblemModel model;
  model.value = [&](const Vector& y) { return objective_value(problem, y); };
  model.subgradient = [&](const Vector& y) { return full_subgradient(problem, y); };
  model.eta = problem.constants.rho;
  return envelope(model, reg, x, lambda, tol, problem.regularized_dim());
}

EnvelopeReport moreau_envelope(const WeaklyConvexFunction& f, const Regularizer& reg,
                               const Vector& x, double lambda, double tol) {
  if (!f.value || !f.subgradient) throw Error(Errc::invalid_argument, "moreau_envelope: empty function");
  SubproblemModel model;
  model.value = f.value;
  model.subgradient = f.subgradient;
  model.eta = f.rho;
  return envelope(model, reg, x, lambda, tol, -1);
}

Vector prox_gradient_mapping(const SmoothFunction& f, const Regularizer& reg, const Vector& x,
                             double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(Errc::nonpositive_step, "prox_gradient_mapping: lambda must be positive");
  }
  const Vector g = f.gradient(x);
  ensure_dimension(g, x.size(), "prox_gradient_mapping gradient");
  return (x - reg.prox(x - lambda * g, lambda)) / lambda;
}

}  // namespace wcopt
