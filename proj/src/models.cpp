#include "wcopt/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wcopt/error.hpp"

namespace wcopt {

std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::linear: return "sgd";
    case ModelFamily::prox_linear: return "prox-linear";
    case ModelFamily::prox_point: return "prox-point";
  }
  return "sgd";
}

ModelFamily parse_model_family(std::string_view tag) {
  if (tag == "sgd" || tag == "linear") return ModelFamily::linear;
  if (tag == "prox-linear") return ModelFamily::prox_linear;
  if (tag == "prox-point") return ModelFamily::prox_point;
  throw Error(Errc::invalid_argument, "unknown method '" + std::string(tag) + "'");
}

TheoreticalConstants model_constants(ModelFamily family, const ProblemInstance& p) {
  TheoreticalConstants c = p.constants;
  switch (family) {
    case ModelFamily::linear:
      c.tau = c.rho;
      c.eta = 0.0;
      break;
    case ModelFamily::prox_linear: {
      c.eta = 0.0;
      c.tau = 0.0;
      if (!p.is_convex() && p.m() > 0) {
        double sum_sq = 0.0;
        for (Index i = 0; i < p.m(); ++i) {
          const double modulus = datum_weak_convexity(p, i);
          sum_sq += modulus * modulus;
        }
        c.tau = std::sqrt(sum_sq / static_cast<double>(p.m()));
      }
      break;
    }
    case ModelFamily::prox_point:
      c.tau = 0.0;
      c.eta = c.rho;
      break;
  }
  if (!(c.rho_bar > c.tau + c.eta)) c.rho_bar = 2.0 * (c.tau + c.eta) > 0.0 ? 2.0 * (c.tau + c.eta) : 1.0;
  return c;
}

namespace {

void check_sample(const ProblemInstance& p, Index sample) {
  if (sample < 0 || sample >= p.m()) {
    throw Error(Errc::invalid_argument, "sample index " + std::to_string(sample) + " out of range");
  }
}

// Value and slope of the inner map c(., xi) at x, for the kinds whose loss is
// |c|. cvar is handled separately.
struct Linearization {
  double value = 0.0;
  Vector slope;
};

Linearization linearize(const ProblemInstance& p, const Vector& x, Index i) {
  Linearization lin;
  switch (p.kind) {
    case ProblemKind::phase_retrieval: {
      const auto a = p.a.row(i).transpose();
      const double ax = a.dot(x);
      lin.value = ax * ax - p.b[i];
      lin.slope = (2.0 * ax) * a;
      break;
    }
    case ProblemKind::blind_deconvolution: {
      const auto u = p.a.row(i).transpose();
      const auto v = p.v.row(i).transpose();
      const double ux = u.dot(x.head(p.d1()));
      const double vy = v.dot(x.tail(p.d2()));
      lin.value = ux * vy - p.b[i];
      lin.slope = concat(vy * u, ux * v);
      break;
    }
    case ProblemKind::lad:
    case ProblemKind::cvar: {
      const auto a = p.a.row(i).transpose();
      lin.value = a.dot(x.head(p.d1())) - p.b[i];
      lin.slope = a;
      break;
    }
  }
  return lin;
}

double sign_or_zero(double r) { return r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0); }

// The cvar prox-linear model keeps the hinge and the level term exact and
// linearizes the datum loss |<a, x> - b| at the base.
double cvar_linear_model(const ProblemInstance& p, const Vector& base, Index i, const Vector& y) {
  const Index d = p.d1();
  const Linearization lin = linearize(p, base, i);
  const double loss = std::abs(lin.value) + sign_or_zero(lin.value) * lin.slope.dot(y.head(d) - base.head(d));
  return (1.0 - p.tail_level) * y[d] + std::max(0.0, loss - y[d]);
}

}  // namespace

double model_value(ModelFamily family, const ProblemInstance& p, const Vector& base, Index sample,
                   const Vector& y) {
  check_sample(p, sample);
  ensure_dimension(base, p.dim(), "model_value base");
  ensure_dimension(y, p.dim(), "model_value point");
  switch (family) {
    case ModelFamily::linear: {
      const SubgradientSample g = stochastic_subgradient(p, base, sample);
      return datum_loss(p, base, sample) + g.vector.dot(y - base);
    }
    case ModelFamily::prox_linear: {
      if (p.kind == ProblemKind::cvar) return cvar_linear_model(p, base, sample, y);
      if (p.kind == ProblemKind::lad) return datum_loss(p, y, sample);
      const Linearization lin = linearize(p, base, sample);
      return std::abs(lin.value + lin.slope.dot(y - base));
    }
    case ModelFamily::prox_point: return datum_loss(p, y, sample);
  }
  return 0.0;
}

SubproblemModel make_subproblem_model(ModelFamily family, const ProblemInstance& p,
                                      const Vector& base, Index sample) {
  check_sample(p, sample);
  ensure_dimension(base, p.dim(), "make_subproblem_model");
  SubproblemModel model;
  model.value = [family, &p, base, sample](const Vector& y) {
    return model_value(family, p, base, sample, y);
  };
  switch (family) {
    case ModelFamily::linear: {
      const Vector g = stochastic_subgradient(p, base, sample).vector;
      model.subgradient = [g](const Vector&) { return g; };
      break;
    }
    case ModelFamily::prox_linear: {
      if (p.kind == ProblemKind::cvar) {
        const Index d = p.d1();
        const Linearization lin = linearize(p, base, sample);
        const Vector slope = sign_or_zero(lin.value) * lin.slope;
        const double alpha = p.tail_level;
        model.subgradient = [&p, base, slope, d, alpha, lin](const Vector& y) {
          Vector g = Vector::Zero(d + 1);
          const double loss = std::abs(lin.value) + slope.dot(y.head(d) - base.head(d));
          if (loss - y[d] > 0.0) {
            g.head(d) = slope;
            g[d] = -alpha;
          } else {
            g[d] = 1.0 - alpha;
          }
          (void)p;
          return g;
        };
      } else if (p.kind == ProblemKind::lad) {
        model.subgradient = [&p, sample](const Vector& y) {
          return stochastic_subgradient(p, y, sample).vector;
        };
      } else {
        const Linearization lin = linearize(p, base, sample);
        model.subgradient = [lin, base](const Vector& y) -> Vector {
          return sign_or_zero(lin.value + lin.slope.dot(y - base)) * lin.slope;
        };
      }
      break;
    }
    case ModelFamily::prox_point:
      model.subgradient = [&p, sample](const Vector& y) {
        return stochastic_subgradient(p, y, sample).vector;
      };
      model.eta = datum_weak_convexity(p, sample);
      break;
  }
  return model;
}

double subproblem_value(ModelFamily family, const ProblemInstance& p, const Regularizer& reg,
                        const Vector& base, Index sample, double beta, const Vector& y) {
  return regularizer_value(p, reg, y) + model_value(family, p, base, sample, y) +
         0.5 * beta * (y - base).squaredNorm();
}

Vector model_step(ModelFamily family, const ProblemInstance& p, const Regularizer& reg,
                  const Vector& base, Index sample, double beta, const StepOptions& options) {
  check_sample(p, sample);
  ensure_dimension(base, p.dim(), "model_step");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(Errc::nonpositive_step, "model_step: beta must be positive and finite");
  }
  const double mu = reg.strong_convexity();
  const double eta = std::max(0.0, model_constants(family, p).eta - mu);
  if (options.require_convex_subproblem && !(beta > eta)) {
    throw Error(Errc::nonconvex_subproblem,
                "model_step: beta must exceed the model weak convexity " + std::to_string(eta));
  }

  if (family == ModelFamily::linear) {
    const double alpha = 1.0 / beta;
    const Vector g = stochastic_subgradient(p, base, sample).vector;
    return regularizer_prox(p, reg, base - alpha * g, alpha);
  }
  if (p.kind == ProblemKind::cvar && family == ModelFamily::prox_linear) {
    return cvar_model_step(p, base, sample, beta, reg);
  }

  const bool foldable = reg.kind() == RegularizerKind::zero || reg.kind() == RegularizerKind::squared_l2;
  if (foldable && p.kind != ProblemKind::cvar) {
    // (mu/2)|y|^2 + (beta/2)|y - x|^2 = ((beta + mu)/2)|y - beta x/(beta + mu)|^2 + const
    const double folded = beta + mu;
    const Vector center = mu > 0.0 ? Vector((beta / folded) * base) : base;
    switch (p.kind) {
      case ProblemKind::phase_retrieval:
        return family == ModelFamily::prox_linear ? proxlinear_step_phase(p, base, sample, folded, center)
                                                  : proxpoint_step_phase(p, center, sample, folded);
      case ProblemKind::blind_deconvolution:
        return family == ModelFamily::prox_linear ? proxlinear_step_blind(p, base, sample, folded, center)
                                                  : proxpoint_step_blind(p, center, sample, folded);
      case ProblemKind::lad: return proxpoint_step_lad(p, center, sample, folded);
      case ProblemKind::cvar: break;
    }
  }

  const SubproblemModel model = make_subproblem_model(family, p, base, sample);
  if (!(beta + mu > model.eta)) {
    throw Error(Errc::unsupported_combination,
                "model_step: no closed form for " + std::string(to_string(family)) + " on " +
                    std::string(to_string(p.kind)) + " with a " + std::string(to_string(reg.kind())) +
                    " regularizer, and the subproblem is not strongly convex");
  }
  SubproblemModel shifted = model;
  shifted.eta = std::max(0.0, model.eta - mu);
  return generic_prox_subproblem(shifted, reg, base, beta, options.generic_tol, p.regularized_dim());
}

}  // namespace wcopt
