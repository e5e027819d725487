#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "wcopt/regularizer.hpp"
#include "wcopt/rng.hpp"
#include "wcopt/vector.hpp"

namespace wcopt {

enum class ProblemKind { phase_retrieval, blind_deconvolution, lad, cvar };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view tag);

/// Moduli and bounds attached to an instance. tau and eta describe the linear
/// (subgradient) model; model_constants() in models.hpp specializes them per
/// model family.
struct TheoreticalConstants {
  double rho = 0.0;        // weak convexity of the objective
  double rho_bar = 0.0;    // envelope parameter, > tau + eta
  double tau = 0.0;        // one-sided accuracy of the model
  double eta = 0.0;        // weak convexity of model + regularizer
  double lipschitz = 0.0;  // second-moment bound on the model slopes
  double mu = 0.0;         // strong convexity (squared-l2 weight) if any
  double sigma = 0.0;      // variance bound; analysis only, not estimated
  double delta_gap = 0.0;  // upper bound on envelope(x0) - min; set with an x0
};

/// Radius of the ball on which lipschitz is evaluated for the nonconvex kinds,
/// whose slopes grow without bound.
inline constexpr double kLipschitzRadius = 2.0;

/// A finite-sum objective f(x) = (1/m) sum_i f(x, xi_i).
///
///   phase_retrieval      f(x, i) = |<a_i, x>^2 - b_i|,               x in R^d
///   blind_deconvolution  f((x, y), i) = |<u_i, x><v_i, y> - b_i|,    (x, y) in R^(d1+d2)
///   lad                  f(x, i) = |<a_i, x> - b_i|
///   cvar                 f((x, g), i) = (1 - alpha) g + (|<a_i, x> - b_i| - g)^+
///
/// Rows of `a` hold a_i (u_i for blind deconvolution); rows of `v` hold v_i.
struct ProblemInstance {
  ProblemKind kind = ProblemKind::phase_retrieval;
  Matrix a;
  Matrix v;
  Vector b;
  Vector ground_truth;
  double tail_level = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  TheoreticalConstants constants;

  Index m() const noexcept { return b.size(); }
  Index d1() const noexcept { return a.cols(); }
  Index d2() const noexcept { return v.cols(); }
  /// Dimension of the decision variable.
  Index dim() const noexcept;
  /// Number of leading coordinates a regularizer acts on (cvar leaves the
  /// auxiliary scalar free).
  Index regularized_dim() const noexcept;
  bool is_convex() const noexcept { return kind == ProblemKind::lad || kind == ProblemKind::cvar; }
};

/// An element G(x, xi) of the subdifferential of one datum's loss, with a
/// bound on its norm valid at the query point.
struct SubgradientSample {
  Vector vector;
  Index datum = 0;
  double per_datum_lipschitz = 0.0;
};

ProblemInstance make_phase_retrieval(Matrix a, Vector b, Vector ground_truth = {});
ProblemInstance make_blind_deconvolution(Matrix u, Matrix v, Vector b, Vector ground_truth = {});
ProblemInstance make_lad(Matrix a, Vector b, Vector ground_truth = {}, double mu = 0.0);
ProblemInstance make_cvar(Matrix a, Vector b, double tail_level, Vector ground_truth = {});

/// a_i ~ N(0, I), x-bar uniform on the sphere, b_i = <a_i, x-bar>^2.
ProblemInstance generate_phase_retrieval(RngStream& rng, Index d, Index m);
/// u_i, v_i ~ N(0, I), b_i = <u_i, x-bar><v_i, x-bar> with one shared x-bar on
/// the sphere when d1 == d2 (independent signals otherwise).
ProblemInstance generate_blind_deconvolution(RngStream& rng, Index d1, Index d2, Index m);
/// a_i ~ N(0, I), x-bar on the sphere, b_i = <a_i, x-bar>; mu is recorded as
/// the squared-l2 weight of default_regularizer().
ProblemInstance generate_lad(RngStream& rng, Index d, Index m, double mu = 0.0);
/// LAD losses under the cvar objective with tail level alpha in (0, 1).
ProblemInstance generate_cvar(RngStream& rng, Index d, Index m, double tail_level);

/// Recomputes constants from the data (delta_gap reset to 0).
TheoreticalConstants compute_constants(const ProblemInstance& problem);
/// Records delta_gap = objective(x0) - 0, an upper bound on envelope(x0) - min
/// for the realizable kinds.
void set_initial_point(ProblemInstance& problem, const Vector& x0);
/// squared_l2(mu) when constants.mu > 0, zero otherwise.
Regularizer default_regularizer(const ProblemInstance& problem);
/// Weak convexity modulus of a single datum's loss.
double datum_weak_convexity(const ProblemInstance& problem, Index datum);

double objective_value(const ProblemInstance& problem, const Vector& x);
double datum_loss(const ProblemInstance& problem, const Vector& x, Index datum);
/// The value of the regularizer on the regularized coordinates of x.
double regularizer_value(const ProblemInstance& problem, const Regularizer& reg, const Vector& x);
/// prox of the regularizer on the regularized coordinates; others unchanged.
Vector regularizer_prox(const ProblemInstance& problem, const Regularizer& reg, const Vector& x,
                        double step);

/// At a nonsmooth tie (residual exactly zero, or a cvar hinge exactly at its
/// kink) the selection uses sign-term 0.
SubgradientSample stochastic_subgradient(const ProblemInstance& problem, const Vector& x,
                                         Index datum);
/// Average of the per-datum selections: an element of the subdifferential of f.
Vector full_subgradient(const ProblemInstance& problem, const Vector& x);

// ---------------------------------------------------------------------------
// Closed-form model steps. `beta` is the proximal weight (lambda = 1/beta);
// `center` is the center of the quadratic term, which differs from the base
// point only when a squared-l2 regularizer has been folded in.

/// argmin_D |gamma + <zeta, D>| + |D|^2 / 2 = clip(-gamma / |zeta|^2, -1, 1) zeta.
Vector solve_linear_model_prox(double gamma, const Vector& zeta);

Vector proxlinear_step_phase(const ProblemInstance& problem, const Vector& x, Index datum,
                             double beta);
Vector proxlinear_step_phase(const ProblemInstance& problem, const Vector& x, Index datum,
                             double beta, const Vector& center);
Vector proxlinear_step_blind(const ProblemInstance& problem, const Vector& xy, Index datum,
                             double beta);
Vector proxlinear_step_blind(const ProblemInstance& problem, const Vector& xy, Index datum,
                             double beta, const Vector& center);
/// For LAD the loss is a convex function of an affine map, so the prox-linear
/// and proximal-point subproblems coincide.
Vector proxpoint_step_lad(const ProblemInstance& problem, const Vector& center, Index datum,
                          double beta);

struct StepCandidate {
  Vector point;
  double value = 0.0;
  std::string_view label;
};

/// Critical points of |<a, y>^2 - b| + (beta/2)|y - x|^2 in enumeration order:
///   first-family '+'   x - (2 l <a,x> / (2 l |a|^2 + 1)) a
///   first-family '-'   x - (2 l <a,x> / (2 l |a|^2 - 1)) a   (skipped if 2 l |a|^2 = 1)
///   second-family '+'  the point with <a, y> = +sqrt(b)
///   second-family '-'  the point with <a, y> = -sqrt(b)
///   the base point x
std::vector<StepCandidate> proxpoint_candidates_phase(const ProblemInstance& problem,
                                                      const Vector& x, Index datum, double beta);
/// Lowest-value candidate; ties go to the earliest in enumeration order.
Vector proxpoint_step_phase(const ProblemInstance& problem, const Vector& x, Index datum,
                            double beta);

/// Critical points of |<u,x><v,y> - b| + (beta/2)(|x - x0|^2 + |y - y0|^2):
///   the two sign branches of the smooth case (skipped if l^2 |u|^2 |v|^2 = 1),
///   one boundary point per distinct real root eta != 0 of
///     |v|^2 eta^4 - |v|^2 <u,x0> eta^3 + b |u|^2 <v,y0> eta - b^2 |u|^2,
///   (when b = 0, the two projections onto <u,x> = 0 and <v,y> = 0 instead),
///   and the base point.
std::vector<StepCandidate> proxpoint_candidates_blind(const ProblemInstance& problem,
                                                      const Vector& xy0, Index datum, double beta);
Vector proxpoint_step_blind(const ProblemInstance& problem, const Vector& xy0, Index datum,
                            double beta);

/// Exact minimizer over (y, g) of
///   (1 - alpha) g + [l(x) + <v, y - x> - g]^+ + r(y) + (beta/2)(|y - x|^2 + (g - g_t)^2)
/// by cases on the hinge (inactive, active, kink), where l is the datum's LAD
/// loss and v a subgradient of it at x.
Vector cvar_model_step(const ProblemInstance& problem, const Vector& z, Index datum, double beta,
                       const Regularizer& reg);

// ---------------------------------------------------------------------------

/// Plain-text container: kind tag, dimensions, seed, then flattened arrays.
void write_instance(std::ostream& out, const ProblemInstance& problem);
ProblemInstance read_instance(std::istream& in);

}  // namespace wcopt
