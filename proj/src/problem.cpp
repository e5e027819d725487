#include "wcopt/problem.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "wcopt/error.hpp"
#include "wcopt/format.hpp"
#include "wcopt/oracle.hpp"
#include "wcopt/quartic.hpp"

namespace wcopt {

namespace {

double sign_or_zero(double r) { return r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0); }

void check_datum(const ProblemInstance& p, Index datum) {
  if (datum < 0 || datum >= p.m()) {
    throw Error(Errc::invalid_argument, "datum index " + std::to_string(datum) +
                                            " out of range [0, " + std::to_string(p.m()) + ")");
  }
}

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(Errc::nonpositive_step, "proximal weight beta must be positive and finite");
  }
}

void check_kind(const ProblemInstance& p, ProblemKind kind, const char* op) {
  if (p.kind != kind) {
    throw Error(Errc::unsupported_combination,
                std::string(op) + " does not apply to a " + std::string(to_string(p.kind)) + " instance");
  }
}

void check_data(const Matrix& a, const Vector& b, const char* what) {
  if (a.rows() != b.size()) {
    throw Error(Errc::dimension_mismatch, std::string(what) + ": one row of measurements per datum");
  }
  if (b.size() < 1 || a.cols() < 1) throw Error(Errc::invalid_dimension, std::string(what) + ": empty data");
  if (!a.allFinite() || !b.allFinite()) throw Error(Errc::invalid_argument, std::string(what) + ": non-finite data");
}

ProblemInstance finish(ProblemInstance p) {
  p.constants = compute_constants(p);
  return p;
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::phase_retrieval: return "phase-retrieval";
    case ProblemKind::blind_deconvolution: return "blind-deconvolution";
    case ProblemKind::lad: return "lad";
    case ProblemKind::cvar: return "cvar";
  }
  return "phase-retrieval";
}

ProblemKind parse_problem_kind(std::string_view tag) {
  if (tag == "phase-retrieval") return ProblemKind::phase_retrieval;
  if (tag == "blind-deconvolution") return ProblemKind::blind_deconvolution;
  if (tag == "lad") return ProblemKind::lad;
  if (tag == "cvar") return ProblemKind::cvar;
  throw Error(Errc::invalid_argument, "unknown problem kind '" + std::string(tag) + "'");
}

Index ProblemInstance::dim() const noexcept {
  switch (kind) {
    case ProblemKind::blind_deconvolution: return a.cols() + v.cols();
    case ProblemKind::cvar: return a.cols() + 1;
    default: return a.cols();
  }
}

Index ProblemInstance::regularized_dim() const noexcept {
  return kind == ProblemKind::cvar ? a.cols() : dim();
}

ProblemInstance make_phase_retrieval(Matrix a, Vector b, Vector ground_truth) {
  check_data(a, b, "phase retrieval");
  if ((b.array() < 0.0).any()) throw Error(Errc::invalid_argument, "phase retrieval: b_i must be >= 0");
  ProblemInstance p;
  p.kind = ProblemKind::phase_retrieval;
  p.a = std::move(a);
  p.b = std::move(b);
  p.ground_truth = std::move(ground_truth);
  return finish(std::move(p));
}

ProblemInstance make_blind_deconvolution(Matrix u, Matrix v, Vector b, Vector ground_truth) {
  check_data(u, b, "blind deconvolution");
  check_data(v, b, "blind deconvolution");
  ProblemInstance p;
  p.kind = ProblemKind::blind_deconvolution;
  p.a = std::move(u);
  p.v = std::move(v);
  p.b = std::move(b);
  p.ground_truth = std::move(ground_truth);
  return finish(std::move(p));
}

ProblemInstance make_lad(Matrix a, Vector b, Vector ground_truth, double mu) {
  check_data(a, b, "lad");
  if (!(mu >= 0.0)) throw Error(Errc::invalid_argument, "lad: mu must be >= 0");
  ProblemInstance p;
  p.kind = ProblemKind::lad;
  p.a = std::move(a);
  p.b = std::move(b);
  p.ground_truth = std::move(ground_truth);
  p.constants.mu = mu;
  return finish(std::move(p));
}

ProblemInstance make_cvar(Matrix a, Vector b, double tail_level, Vector ground_truth) {
  check_data(a, b, "cvar");
  if (!(tail_level > 0.0 && tail_level < 1.0)) {
    throw Error(Errc::invalid_argument, "cvar: tail level must lie in (0, 1)");
  }
  ProblemInstance p;
  p.kind = ProblemKind::cvar;
  p.a = std::move(a);
  p.b = std::move(b);
  p.tail_level = tail_level;
  p.ground_truth = std::move(ground_truth);
  return finish(std::move(p));
}

namespace {

Matrix gaussian_rows(RngStream& rng, Index m, Index d) {
  Matrix out(m, d);
  for (Index i = 0; i < m; ++i) out.row(i) = gaussian_vector(rng, d).transpose();
  return out;
}

void check_sizes(Index d, Index m, const char* what) {
  if (d < 1 || m < 1) throw Error(Errc::invalid_dimension, std::string(what) + ": need d >= 1 and m >= 1");
}

void stamp(ProblemInstance& p, const RngStream& rng) {
  p.seed = rng.seed();
  p.stream_id = rng.stream_id();
}

}  // namespace

ProblemInstance generate_phase_retrieval(RngStream& rng, Index d, Index m) {
  check_sizes(d, m, "generate_phase_retrieval");
  const RngStream origin = rng;
  Matrix a = gaussian_rows(rng, m, d);
  Vector truth = unit_sphere_point(rng, d);
  Vector b = (a * truth).array().square().matrix();
  ProblemInstance p = make_phase_retrieval(std::move(a), std::move(b), std::move(truth));
  stamp(p, origin);
  return p;
}

ProblemInstance generate_blind_deconvolution(RngStream& rng, Index d1, Index d2, Index m) {
  check_sizes(std::min(d1, d2), m, "generate_blind_deconvolution");
  const RngStream origin = rng;
  Matrix u = gaussian_rows(rng, m, d1);
  Matrix v = gaussian_rows(rng, m, d2);
  Vector x_bar = unit_sphere_point(rng, d1);
  Vector y_bar = d1 == d2 ? x_bar : unit_sphere_point(rng, d2);
  Vector b = ((u * x_bar).array() * (v * y_bar).array()).matrix();
  ProblemInstance p = make_blind_deconvolution(std::move(u), std::move(v), std::move(b),
                                               concat(x_bar, y_bar));
  stamp(p, origin);
  return p;
}

ProblemInstance generate_lad(RngStream& rng, Index d, Index m, double mu) {
  check_sizes(d, m, "generate_lad");
  const RngStream origin = rng;
  Matrix a = gaussian_rows(rng, m, d);
  Vector truth = unit_sphere_point(rng, d);
  Vector b = a * truth;
  ProblemInstance p = make_lad(std::move(a), std::move(b), std::move(truth), mu);
  stamp(p, origin);
  return p;
}

ProblemInstance generate_cvar(RngStream& rng, Index d, Index m, double tail_level) {
  check_sizes(d, m, "generate_cvar");
  const RngStream origin = rng;
  Matrix a = gaussian_rows(rng, m, d);
  Vector truth = unit_sphere_point(rng, d);
  Vector b = a * truth;
  Vector z(d + 1);
  z << truth, 0.0;
  ProblemInstance p = make_cvar(std::move(a), std::move(b), tail_level, std::move(z));
  stamp(p, origin);
  return p;
}

TheoreticalConstants compute_constants(const ProblemInstance& p) {
  TheoreticalConstants c;
  c.mu = p.constants.mu;
  const Vector row_sq = p.a.rowwise().squaredNorm();
  switch (p.kind) {
    case ProblemKind::phase_retrieval: {
      c.rho = 2.0 * row_sq.maxCoeff();
      // |G| = 2 |<a, x>| |a| <= 2 |a|^2 R on the ball of radius R
      c.lipschitz = 2.0 * kLipschitzRadius * std::sqrt(row_sq.array().square().mean());
      break;
    }
    case ProblemKind::blind_deconvolution: {
      const Vector v_sq = p.v.rowwise().squaredNorm();
      const Vector products = (row_sq.array() * v_sq.array()).sqrt().matrix();
      c.rho = products.maxCoeff();
      c.lipschitz = kLipschitzRadius * std::sqrt(products.array().square().mean());
      break;
    }
    case ProblemKind::lad: c.lipschitz = std::sqrt(row_sq.mean()); break;
    case ProblemKind::cvar: {
      const double slope = std::max(p.tail_level, 1.0 - p.tail_level);
      c.lipschitz = std::sqrt(row_sq.mean() + slope * slope);
      break;
    }
  }
  c.tau = c.rho;  // linear models of a rho-weakly convex f
  c.eta = 0.0;
  c.rho_bar = c.rho > 0.0 ? 2.0 * c.rho : 1.0;
  return c;
}

void set_initial_point(ProblemInstance& problem, const Vector& x0) {
  ensure_dimension(x0, problem.dim(), "set_initial_point");
  problem.constants.delta_gap = objective_value(problem, x0);
}

Regularizer default_regularizer(const ProblemInstance& problem) {
  return problem.constants.mu > 0.0 ? Regularizer::squared_l2(problem.constants.mu)
                                    : Regularizer::zero();
}

double datum_weak_convexity(const ProblemInstance& p, Index datum) {
  check_datum(p, datum);
  switch (p.kind) {
    case ProblemKind::phase_retrieval: return 2.0 * p.a.row(datum).squaredNorm();
    case ProblemKind::blind_deconvolution: return p.a.row(datum).norm() * p.v.row(datum).norm();
    default: return 0.0;
  }
}

double datum_loss(const ProblemInstance& p, const Vector& x, Index datum) {
  check_datum(p, datum);
  ensure_dimension(x, p.dim(), "datum_loss");
  const Index d = p.d1();
  switch (p.kind) {
    case ProblemKind::phase_retrieval: {
      const double ax = p.a.row(datum).dot(x);
      return std::abs(ax * ax - p.b[datum]);
    }
    case ProblemKind::blind_deconvolution: {
      const double ux = p.a.row(datum).dot(x.head(d));
      const double vy = p.v.row(datum).dot(x.tail(p.d2()));
      return std::abs(ux * vy - p.b[datum]);
    }
    case ProblemKind::lad: return std::abs(p.a.row(datum).dot(x) - p.b[datum]);
    case ProblemKind::cvar: {
      const double loss = std::abs(p.a.row(datum).dot(x.head(d)) - p.b[datum]);
      const double level = x[d];
      return (1.0 - p.tail_level) * level + std::max(0.0, loss - level);
    }
  }
  return 0.0;
}

double objective_value(const ProblemInstance& p, const Vector& x) {
  ensure_dimension(x, p.dim(), "objective_value");
  double total = 0.0;
  for (Index i = 0; i < p.m(); ++i) total += datum_loss(p, x, i);
  return total / static_cast<double>(p.m());
}

double regularizer_value(const ProblemInstance& p, const Regularizer& reg, const Vector& x) {
  ensure_dimension(x, p.dim(), "regularizer_value");
  return reg.value(x.head(p.regularized_dim()));
}

Vector regularizer_prox(const ProblemInstance& p, const Regularizer& reg, const Vector& x,
                        double step) {
  ensure_dimension(x, p.dim(), "regularizer_prox");
  const Index k = p.regularized_dim();
  if (k == x.size()) return reg.prox(x, step);
  Vector out = x;
  out.head(k) = reg.prox(x.head(k), step);
  return out;
}

SubgradientSample stochastic_subgradient(const ProblemInstance& p, const Vector& x, Index datum) {
  check_datum(p, datum);
  ensure_dimension(x, p.dim(), "stochastic_subgradient");
  SubgradientSample s;
  s.datum = datum;
  const Index d = p.d1();
  switch (p.kind) {
    case ProblemKind::phase_retrieval: {
      const auto a = p.a.row(datum).transpose();
      const double ax = a.dot(x);
      const double sign = sign_or_zero(ax * ax - p.b[datum]);
      s.vector = (2.0 * ax * sign) * a;
      s.per_datum_lipschitz = 2.0 * std::abs(ax) * a.norm();
      break;
    }
    case ProblemKind::blind_deconvolution: {
      const auto u = p.a.row(datum).transpose();
      const auto v = p.v.row(datum).transpose();
      const double ux = u.dot(x.head(d));
      const double vy = v.dot(x.tail(p.d2()));
      const double sign = sign_or_zero(ux * vy - p.b[datum]);
      s.vector = concat((sign * vy) * u, (sign * ux) * v);
      s.per_datum_lipschitz = std::sqrt(vy * vy * u.squaredNorm() + ux * ux * v.squaredNorm());
      break;
    }
    case ProblemKind::lad: {
      const auto a = p.a.row(datum).transpose();
      s.vector = sign_or_zero(a.dot(x) - p.b[datum]) * a;
      s.per_datum_lipschitz = a.norm();
      break;
    }
    case ProblemKind::cvar: {
      const auto a = p.a.row(datum).transpose();
      const double residual = a.dot(x.head(d)) - p.b[datum];
      const double loss = std::abs(residual);
      const double alpha = p.tail_level;
      s.vector = Vector::Zero(d + 1);
      if (loss - x[d] > 0.0) {
        s.vector.head(d) = sign_or_zero(residual) * a;
        s.vector[d] = -alpha;
      } else {
        s.vector[d] = 1.0 - alpha;
      }
      s.per_datum_lipschitz = std::sqrt(a.squaredNorm() + std::pow(std::max(alpha, 1.0 - alpha), 2));
      break;
    }
  }
  return s;
}

Vector full_subgradient(const ProblemInstance& p, const Vector& x) {
  Vector g = Vector::Zero(p.dim());
  for (Index i = 0; i < p.m(); ++i) g += stochastic_subgradient(p, x, i).vector;
  return g / static_cast<double>(p.m());
}

// ---------------------------------------------------------------------------

Vector solve_linear_model_prox(double gamma, const Vector& zeta) {
  const double norm_sq = zeta.squaredNorm();
  if (norm_sq == 0.0) return Vector::Zero(zeta.size());
  const double t = std::clamp(-gamma / norm_sq, -1.0, 1.0);
  return t * zeta;
}

namespace {

// argmin_w |c0 + <slope, w - base>| + (beta/2)|w - center|^2
Vector linear_model_step(double c0, const Vector& slope, const Vector& base, const Vector& center,
                         double beta) {
  const double lambda = 1.0 / beta;
  const double gamma = lambda * (c0 + slope.dot(center - base));
  return center + solve_linear_model_prox(gamma, lambda * slope);
}

}  // namespace

Vector proxlinear_step_phase(const ProblemInstance& p, const Vector& x, Index datum, double beta) {
  return proxlinear_step_phase(p, x, datum, beta, x);
}

Vector proxlinear_step_phase(const ProblemInstance& p, const Vector& x, Index datum, double beta,
                             const Vector& center) {
  check_kind(p, ProblemKind::phase_retrieval, "proxlinear_step_phase");
  check_datum(p, datum);
  check_beta(beta);
  ensure_dimension(x, p.dim(), "proxlinear_step_phase");
  const auto a = p.a.row(datum).transpose();
  const double ax = a.dot(x);
  return linear_model_step(ax * ax - p.b[datum], (2.0 * ax) * a, x, center, beta);
}

Vector proxlinear_step_blind(const ProblemInstance& p, const Vector& xy, Index datum, double beta) {
  return proxlinear_step_blind(p, xy, datum, beta, xy);
}

Vector proxlinear_step_blind(const ProblemInstance& p, const Vector& xy, Index datum, double beta,
                             const Vector& center) {
  check_kind(p, ProblemKind::blind_deconvolution, "proxlinear_step_blind");
  check_datum(p, datum);
  check_beta(beta);
  ensure_dimension(xy, p.dim(), "proxlinear_step_blind");
  const auto u = p.a.row(datum).transpose();
  const auto v = p.v.row(datum).transpose();
  const double ux = u.dot(xy.head(p.d1()));
  const double vy = v.dot(xy.tail(p.d2()));
  const Vector slope = concat(vy * u, ux * v);
  return linear_model_step(ux * vy - p.b[datum], slope, xy, center, beta);
}

Vector proxpoint_step_lad(const ProblemInstance& p, const Vector& center, Index datum, double beta) {
  check_kind(p, ProblemKind::lad, "proxpoint_step_lad");
  check_datum(p, datum);
  check_beta(beta);
  ensure_dimension(center, p.dim(), "proxpoint_step_lad");
  const auto a = p.a.row(datum).transpose();
  return linear_model_step(a.dot(center) - p.b[datum], a, center, center, beta);
}

namespace {

Vector pick_lowest(const std::vector<StepCandidate>& candidates) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    if (candidates[k].value < candidates[best].value) best = k;
  }
  return candidates[best].point;
}

}  // namespace

std::vector<StepCandidate> proxpoint_candidates_phase(const ProblemInstance& p, const Vector& x,
                                                      Index datum, double beta) {
  check_kind(p, ProblemKind::phase_retrieval, "proxpoint_step_phase");
  check_datum(p, datum);
  check_beta(beta);
  ensure_dimension(x, p.dim(), "proxpoint_step_phase");
  const double lambda = 1.0 / beta;
  const auto a = p.a.row(datum).transpose();
  const double b = p.b[datum];
  const double norm_sq = a.squaredNorm();
  const double ax = a.dot(x);

  std::vector<StepCandidate> out;
  auto add = [&](Vector y, std::string_view label) {
    const double ay = a.dot(y);
    const double value = std::abs(ay * ay - b) + 0.5 * beta * (y - x).squaredNorm();
    out.push_back({std::move(y), value, label});
  };
  add(x - (2.0 * lambda * ax / (2.0 * lambda * norm_sq + 1.0)) * a, "smooth+");
  const double minus_den = 2.0 * lambda * norm_sq - 1.0;
  if (std::abs(minus_den) > 1e-14) add(x - (2.0 * lambda * ax / minus_den) * a, "smooth-");
  if (norm_sq > 0.0) {
    const double root_b = std::sqrt(b);
    add(x - ((ax - root_b) / norm_sq) * a, "boundary+");
    add(x - ((ax + root_b) / norm_sq) * a, "boundary-");
  }
  add(x, "base");
  return out;
}

Vector proxpoint_step_phase(const ProblemInstance& p, const Vector& x, Index datum, double beta) {
  return pick_lowest(proxpoint_candidates_phase(p, x, datum, beta));
}

std::vector<StepCandidate> proxpoint_candidates_blind(const ProblemInstance& p, const Vector& xy0,
                                                      Index datum, double beta) {
  check_kind(p, ProblemKind::blind_deconvolution, "proxpoint_step_blind");
  check_datum(p, datum);
  check_beta(beta);
  ensure_dimension(xy0, p.dim(), "proxpoint_step_blind");
  const double lambda = 1.0 / beta;
  const auto u = p.a.row(datum).transpose();
  const auto v = p.v.row(datum).transpose();
  const double b = p.b[datum];
  const Vector x0 = xy0.head(p.d1());
  const Vector y0 = xy0.tail(p.d2());
  const double nu = u.squaredNorm();
  const double nv = v.squaredNorm();
  const double ux0 = u.dot(x0);
  const double vy0 = v.dot(y0);

  std::vector<StepCandidate> out;
  auto add = [&](const Vector& x, const Vector& y, std::string_view label) {
    const double value = std::abs(u.dot(x) * v.dot(y) - b) +
                         0.5 * beta * ((x - x0).squaredNorm() + (y - y0).squaredNorm());
    out.push_back({concat(x, y), value, label});
  };

  const double denom = 1.0 - lambda * lambda * nu * nv;
  if (std::abs(denom) > 1e-14) {
    for (double s : {1.0, -1.0}) {
      const Vector x = x0 - lambda * ((s * vy0 - lambda * nv * ux0) / denom) * u;
      const Vector y = y0 - lambda * ((s * ux0 - lambda * nu * vy0) / denom) * v;
      add(x, y, s > 0 ? "smooth+" : "smooth-");
    }
  }

  if (b != 0.0 && nu > 0.0 && nv > 0.0) {
    const QuarticPoly quartic{{nv, -nv * ux0, 0.0, b * nu * vy0, -b * b * nu}};
    std::vector<double> roots = quartic_real_roots(quartic);
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (double eta : roots) {
      if (eta == 0.0) continue;
      const double gamma = (eta * ux0 - eta * eta) / (b * nu);
      add(x0 - (gamma * b / eta) * u, y0 - (gamma * eta) * v, "boundary");
    }
  } else if (b == 0.0) {
    if (nu > 0.0) add(x0 - (ux0 / nu) * u, y0, "boundary-x");
    if (nv > 0.0) add(x0, y0 - (vy0 / nv) * v, "boundary-y");
  }
  add(x0, y0, "base");
  return out;
}

Vector proxpoint_step_blind(const ProblemInstance& p, const Vector& xy0, Index datum, double beta) {
  return pick_lowest(proxpoint_candidates_blind(p, xy0, datum, beta));
}

Vector cvar_model_step(const ProblemInstance& p, const Vector& z, Index datum, double beta,
                       const Regularizer& reg) {
  check_kind(p, ProblemKind::cvar, "cvar_model_step");
  check_datum(p, datum);
  check_beta(beta);
  ensure_dimension(z, p.dim(), "cvar_model_step");
  const Index d = p.d1();
  const double lambda = 1.0 / beta;
  const double alpha = p.tail_level;
  const Vector x = z.head(d);
  const double level = z[d];
  const auto a = p.a.row(datum).transpose();
  const double residual = a.dot(x) - p.b[datum];
  const double loss = std::abs(residual);
  const Vector slope = sign_or_zero(residual) * a;

  // hinge argument at (y, g)
  auto hinge = [&](const Vector& y, double g) { return loss + slope.dot(y - x) - g; };
  auto objective = [&](const Vector& y, double g) {
    return (1.0 - alpha) * g + std::max(0.0, hinge(y, g)) + reg.value(y) +
           0.5 * beta * ((y - x).squaredNorm() + (g - level) * (g - level));
  };
  // minimizer of the hinge-free problem with multiplier s in [0, 1] on the hinge
  auto at = [&](double s) {
    Vector y = reg.prox(x - (s * lambda) * slope, lambda);
    const double g = level - (1.0 - alpha - s) * lambda;
    return std::pair{std::move(y), g};
  };

  struct Case {
    Vector y;
    double g;
  };
  std::vector<Case> consistent;
  auto [y_off, g_off] = at(0.0);
  const double h_off = hinge(y_off, g_off);
  if (h_off <= 0.0) consistent.push_back({y_off, g_off});
  auto [y_on, g_on] = at(1.0);
  const double h_on = hinge(y_on, g_on);
  if (h_on >= 0.0) consistent.push_back({y_on, g_on});
  if (h_off > 0.0 && h_on < 0.0) {
    // the hinge argument is strictly decreasing in s: bisect for its zero
    double lo = 0.0, hi = 1.0, h_lo = h_off, h_hi = h_on;
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
      const double mid = lo + (hi - lo) * (h_lo / (h_lo - h_hi));
      const double safe = (mid > lo && mid < hi) ? mid : 0.5 * (lo + hi);
      auto [y_mid, g_mid] = at(safe);
      const double h_mid = hinge(y_mid, g_mid);
      if (h_mid == 0.0) {
        lo = hi = safe;
        break;
      }
      if (h_mid > 0.0) {
        lo = safe;
        h_lo = h_mid;
      } else {
        hi = safe;
        h_hi = h_mid;
      }
      if (hi - lo <= 1e-17) break;
    }
    const double s = std::abs(h_lo) <= std::abs(h_hi) ? lo : hi;
    auto [y_kink, g_kink] = at(s);
    const double scale = 1.0 + std::abs(loss) + std::abs(level);
    if (std::abs(hinge(y_kink, g_kink)) <= 1e-9 * scale) consistent.push_back({y_kink, g_kink});
  }

  if (consistent.empty()) {
    SubproblemModel model;
    model.value = [&](const Vector& w) {
      return (1.0 - alpha) * w[d] + std::max(0.0, hinge(w.head(d), w[d]));
    };
    model.subgradient = [&](const Vector& w) {
      Vector g = Vector::Zero(d + 1);
      if (hinge(w.head(d), w[d]) > 0.0) {
        g.head(d) = slope;
        g[d] = -alpha;
      } else {
        g[d] = 1.0 - alpha;
      }
      return g;
    };
    return generic_prox_subproblem(model, reg, z, beta, 1e-12, d);
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < consistent.size(); ++k) {
    if (objective(consistent[k].y, consistent[k].g) < objective(consistent[best].y, consistent[best].g)) {
      best = k;
    }
  }
  Vector out(d + 1);
  out << consistent[best].y, consistent[best].g;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void write_array(std::ostream& out, std::string_view name, const Eigen::Ref<const Matrix>& m) {
  out << name << ' ' << m.rows() << ' ' << m.cols();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << ' ' << format_double(m(i, j));
  }
  out << '\n';
}

Matrix read_array(std::istream& in, std::string_view name) {
  std::string tag;
  Index rows = 0, cols = 0;
  if (!(in >> tag) || tag != name || !(in >> rows >> cols) || rows < 0 || cols < 0) {
    throw Error(Errc::io_error, "instance file: expected array '" + std::string(name) + "'");
  }
  Matrix m(rows, cols);
  std::string token;
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      if (!(in >> token)) throw Error(Errc::io_error, "instance file: truncated array '" + std::string(name) + "'");
      m(i, j) = parse_double(token);
    }
  }
  return m;
}

}  // namespace

void write_instance(std::ostream& out, const ProblemInstance& p) {
  out << "wcopt-instance 1\n";
  out << "kind " << to_string(p.kind) << '\n';
  out << "seed " << p.seed << ' ' << p.stream_id << '\n';
  out << "tail_level " << format_double(p.tail_level) << '\n';
  out << "mu " << format_double(p.constants.mu) << '\n';
  write_array(out, "a", p.a);
  write_array(out, "v", p.v);
  write_array(out, "b", p.b);
  write_array(out, "ground_truth", p.ground_truth);
  out << "end\n";
}

ProblemInstance read_instance(std::istream& in) {
  std::string tag, token;
  int version = 0;
  if (!(in >> tag >> version) || tag != "wcopt-instance" || version != 1) {
    throw Error(Errc::io_error, "instance file: missing 'wcopt-instance 1' header");
  }
  auto expect = [&](std::string_view name) {
    if (!(in >> tag) || tag != name) {
      throw Error(Errc::io_error, "instance file: expected field '" + std::string(name) + "'");
    }
  };
  expect("kind");
  in >> token;
  const ProblemKind kind = parse_problem_kind(token);
  std::uint64_t seed = 0, stream = 0;
  expect("seed");
  if (!(in >> seed >> stream)) throw Error(Errc::io_error, "instance file: malformed seed line");
  expect("tail_level");
  in >> token;
  const double tail_level = parse_double(token);
  expect("mu");
  in >> token;
  const double mu = parse_double(token);
  Matrix a = read_array(in, "a");
  Matrix v = read_array(in, "v");
  Vector b = read_array(in, "b");
  Vector truth = read_array(in, "ground_truth");
  expect("end");

  ProblemInstance p;
  switch (kind) {
    case ProblemKind::phase_retrieval: p = make_phase_retrieval(std::move(a), std::move(b), std::move(truth)); break;
    case ProblemKind::blind_deconvolution:
      p = make_blind_deconvolution(std::move(a), std::move(v), std::move(b), std::move(truth));
      break;
    case ProblemKind::lad: p = make_lad(std::move(a), std::move(b), std::move(truth), mu); break;
    case ProblemKind::cvar: p = make_cvar(std::move(a), std::move(b), tail_level, std::move(truth)); break;
  }
  p.seed = seed;
  p.stream_id = stream;
  return p;
}

}  // namespace wcopt
