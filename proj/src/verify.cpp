#include "wcopt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <sstream>

#include "wcopt/error.hpp"
#include "wcopt/format.hpp"
#include "wcopt/models.hpp"

namespace wcopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FaultName {
  Fault fault;
  std::string_view name;
};

constexpr FaultName kFaultNames[] = {
    {Fault::none, "none"},
    {Fault::clip, "clip"},
    {Fault::proxlinear_phase, "proxlinear-phase"},
    {Fault::proxlinear_blind, "proxlinear-blind"},
    {Fault::phase_candidate, "phase-candidate"},
    {Fault::blind_candidate, "blind-candidate"},
    {Fault::quartic, "quartic"},
    {Fault::cvar, "cvar"},
    {Fault::subgradient, "subgradient"},
    {Fault::regularizer_prox, "regularizer-prox"},
};

Vector lowest(const std::vector<StepCandidate>& candidates) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    if (candidates[k].value < candidates[best].value) best = k;
  }
  return candidates[best].point;
}

std::vector<StepCandidate> without(std::vector<StepCandidate> candidates, std::string_view prefix) {
  std::erase_if(candidates, [&](const StepCandidate& c) { return c.label.starts_with(prefix); });
  return candidates;
}

}  // namespace

std::vector<Fault> fault_fixtures() {
  std::vector<Fault> out;
  for (const auto& f : kFaultNames) {
    if (f.fault != Fault::none) out.push_back(f.fault);
  }
  return out;
}

std::string_view to_string(Fault fault) {
  for (const auto& f : kFaultNames) {
    if (f.fault == fault) return f.name;
  }
  return "none";
}

Fault parse_fault(std::string_view tag) {
  for (const auto& f : kFaultNames) {
    if (f.name == tag) return f.fault;
  }
  throw Error(Errc::invalid_argument, "unknown fault fixture '" + std::string(tag) + "'");
}

ClosedForms closed_forms(Fault fault) {
  ClosedForms cf;
  cf.solve_linear_model_prox = [](double g, const Vector& z) { return solve_linear_model_prox(g, z); };
  cf.proxlinear_step_phase = [](const ProblemInstance& p, const Vector& x, Index i, double beta) {
    return proxlinear_step_phase(p, x, i, beta);
  };
  cf.proxlinear_step_blind = [](const ProblemInstance& p, const Vector& x, Index i, double beta) {
    return proxlinear_step_blind(p, x, i, beta);
  };
  cf.proxpoint_step_phase = [](const ProblemInstance& p, const Vector& x, Index i, double beta) {
    return proxpoint_step_phase(p, x, i, beta);
  };
  cf.proxpoint_step_blind = [](const ProblemInstance& p, const Vector& x, Index i, double beta) {
    return proxpoint_step_blind(p, x, i, beta);
  };
  cf.proxpoint_candidates_blind = [](const ProblemInstance& p, const Vector& x, Index i, double beta) {
    return proxpoint_candidates_blind(p, x, i, beta);
  };
  cf.quartic_real_roots = [](const QuarticPoly& q) { return quartic_real_roots(q); };
  cf.cvar_model_step = [](const ProblemInstance& p, const Vector& z, Index i, double beta,
                          const Regularizer& r) { return cvar_model_step(p, z, i, beta, r); };
  cf.stochastic_subgradient = [](const ProblemInstance& p, const Vector& x, Index i) {
    return stochastic_subgradient(p, x, i);
  };
  cf.regularizer_prox = [](const Regularizer& r, const Vector& x, double step) { return r.prox(x, step); };

  switch (fault) {
    case Fault::none: break;
    case Fault::clip:
      cf.solve_linear_model_prox = [](double g, const Vector& z) -> Vector {
        const double n = z.squaredNorm();
        if (n == 0.0) return Vector::Zero(z.size());
        return (-g / n) * z;
      };
      break;
    case Fault::proxlinear_phase:
      cf.proxlinear_step_phase = [](const ProblemInstance& p, const Vector& x, Index i, double beta) -> Vector {
        const double lambda = 1.0 / beta;
        const Vector a = p.a.row(i).transpose();
        const double ax = a.dot(x);
        return x + solve_linear_model_prox(lambda * (ax * ax - p.b[i]), (lambda * ax) * a);
      };
      break;
    case Fault::proxlinear_blind:
      cf.proxlinear_step_blind = [](const ProblemInstance& p, const Vector& xy, Index i, double beta) -> Vector {
        const double lambda = 1.0 / beta;
        const Vector u = p.a.row(i).transpose();
        const Vector v = p.v.row(i).transpose();
        const double ux = u.dot(xy.head(p.d1()));
        const double vy = v.dot(xy.tail(p.d2()));
        const Vector zeta = lambda * concat(ux * u, vy * v);
        return xy + solve_linear_model_prox(lambda * (ux * vy - p.b[i]), zeta);
      };
      break;
    case Fault::phase_candidate:
      cf.proxpoint_step_phase = [](const ProblemInstance& p, const Vector& x, Index i, double beta) {
        return lowest(without(proxpoint_candidates_phase(p, x, i, beta), "smooth+"));
      };
      break;
    case Fault::blind_candidate:
      cf.proxpoint_candidates_blind = [](const ProblemInstance& p, const Vector& x, Index i, double beta) {
        return without(proxpoint_candidates_blind(p, x, i, beta), "boundary");
      };
      cf.proxpoint_step_blind = [](const ProblemInstance& p, const Vector& x, Index i, double beta) {
        return lowest(without(proxpoint_candidates_blind(p, x, i, beta), "boundary"));
      };
      break;
    case Fault::quartic:
      cf.quartic_real_roots = [](const QuarticPoly& q) {
        std::vector<double> roots = quartic_real_roots(q);
        if (!roots.empty()) roots.pop_back();
        return roots;
      };
      break;
    case Fault::cvar:
      cf.cvar_model_step = [](const ProblemInstance& p, const Vector& z, Index, double beta,
                              const Regularizer& r) -> Vector {
        const Index d = p.d1();
        Vector out(d + 1);
        out << r.prox(z.head(d), 1.0 / beta), z[d] - (1.0 - p.tail_level) / beta;
        return out;
      };
      break;
    case Fault::subgradient:
      cf.stochastic_subgradient = [](const ProblemInstance& p, const Vector& x, Index i) {
        SubgradientSample s = stochastic_subgradient(p, x, i);
        s.vector = -s.vector;
        return s;
      };
      break;
    case Fault::regularizer_prox:
      cf.regularizer_prox = [](const Regularizer& r, const Vector& x, double step) -> Vector {
        if (r.kind() != RegularizerKind::l1) return r.prox(x, step);
        const double t = 2.0 * step * r.weight();
        return x.unaryExpr([t](double v) { return std::copysign(std::max(std::abs(v) - t, 0.0), v); });
      };
      break;
  }
  return cf;
}

namespace {

// Accumulates the worst error of one pairing.
class Tracker {
 public:
  Tracker(std::string name, double tolerance) {
    report_.op_name = std::move(name);
    report_.tolerance = tolerance;
  }

  template <class Describe>
  void record(double error, Describe&& describe) {
    ++report_.instances_checked;
    if (std::isnan(error)) error = kInf;
    if (report_.instances_checked == 1 || error > report_.max_abs_error) {
      report_.max_abs_error = error;
      report_.worst_instance = describe();
    }
  }

  OracleReport finish() {
    report_.passed = report_.instances_checked > 0 && report_.max_abs_error <= report_.tolerance;
    return report_;
  }

 private:
  OracleReport report_;
};

std::string text(const Vector& v) {
  std::string out = "(";
  for (Index k = 0; k < v.size(); ++k) out += (k ? "," : "") + format_double(v[k]);
  return out + ")";
}

double log_uniform(RngStream& rng, double lo, double hi) {
  return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng.uniform());
}

Matrix row(const Vector& v) { return v.transpose(); }

RngStream pairing_stream(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return RngStream(seed, h);
}

// Certified minimizer of a convex model plus (beta/2)|y - base|^2. The
// certificate starts at `tol` and is relaxed tenfold while rounding keeps it
// out of reach.
Vector generic_argmin(const SubproblemModel& model, const Regularizer& reg, const Vector& base, double beta,
                      double tol, Index regularized_dim = -1) {
  for (int attempt = 0;; ++attempt) {
    try {
      return generic_prox_subproblem(model, reg, base, beta, tol, regularized_dim);
    } catch (const Error& e) {
      if (e.code() != Errc::tolerance_not_met || attempt == 3) throw;
      tol *= 10.0;
    }
  }
}

// 1-D grid argmin of y -> F(y) on [center - radius, center + radius], where
// |F'| <= lipschitz on the box.
double grid_argmin_1d(const std::function<double(double)>& f, double center, double radius,
                      double lipschitz, double resolution = 1e-5) {
  GridOptions options;
  options.lipschitz = lipschitz;
  return grid_minimize(f, center - radius, center + radius, resolution, options).argmin;
}

// ---------------------------------------------------------------------------

OracleReport check_linear_model_prox(const ClosedForms& cf, std::size_t count, std::uint64_t seed) {
  Tracker tracker("solve_linear_model_prox", 1e-6);
  RngStream rng = pairing_stream(seed, "solve_linear_model_prox");
  for (std::size_t k = 0; k < count; ++k) {
    const Index d = 1 + static_cast<Index>(rng.uniform_index(2));
    const double gamma = 2.0 * rng.normal();
    const Vector zeta = gaussian_vector(rng, d);
    const Vector closed = cf.solve_linear_model_prox(gamma, zeta);
    Vector oracle;
    if (d == 1) {
      const double z = zeta[0];
      const double r = std::abs(z) + 1.0;
      oracle = make_vector({grid_argmin_1d([&](double t) { return std::abs(gamma + z * t) + 0.5 * t * t; },
                                           0.0, r, std::abs(z) + r)});
    } else {
      SubproblemModel model;
      model.value = [&](const Vector& t) { return std::abs(gamma + zeta.dot(t)); };
      model.subgradient = [&](const Vector& t) -> Vector {
        const double s = gamma + zeta.dot(t);
        return (s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0)) * zeta;
      };
      oracle = generic_argmin(model, Regularizer::zero(), Vector::Zero(d), 1.0, 1e-14);
    }
    tracker.record((closed - oracle).norm(), [&] {
      return "gamma=" + format_double(gamma) + " zeta=" + text(zeta) + " closed=" + text(closed) +
             " oracle=" + text(oracle);
    });
  }
  return tracker.finish();
}

OracleReport check_proxlinear_phase(const ClosedForms& cf, std::size_t count, std::uint64_t seed) {
  Tracker tracker("proxlinear_step_phase", 1e-6);
  RngStream rng = pairing_stream(seed, "proxlinear_step_phase");
  for (std::size_t k = 0; k < count; ++k) {
    const Index d = 1 + static_cast<Index>(rng.uniform_index(2));
    const Vector a = gaussian_vector(rng, d);
    const Vector truth = gaussian_vector(rng, d);
    const double b = std::pow(a.dot(truth), 2);
    const Vector x = 1.5 * gaussian_vector(rng, d);
    const double beta = log_uniform(rng, 0.5, 50.0);
    const ProblemInstance p = make_phase_retrieval(row(a), make_vector({b}));
    const Vector closed = cf.proxlinear_step_phase(p, x, 0, beta);
    const SubproblemModel model = make_subproblem_model(ModelFamily::prox_linear, p, x, 0);
    Vector oracle;
    if (d == 1) {
      const double fx = model.value(x);
      const double r = std::sqrt(2.0 * fx / beta) + 1e-3;
      const double slope = std::abs(2.0 * a[0] * a[0] * x[0]);
      oracle = make_vector({grid_argmin_1d(
          [&](double t) { return model.value(make_vector({t})) + 0.5 * beta * (t - x[0]) * (t - x[0]); }, x[0], r,
          slope + beta * r)});
    } else {
      oracle = generic_argmin(model, Regularizer::zero(), x, beta, 1e-14);
    }
    tracker.record((closed - oracle).norm(), [&] {
      return "a=" + text(a) + " b=" + format_double(b) + " x=" + text(x) + " beta=" + format_double(beta) +
             " closed=" + text(closed) + " oracle=" + text(oracle);
    });
  }
  return tracker.finish();
}

OracleReport check_proxlinear_blind(const ClosedForms& cf, std::size_t count, std::uint64_t seed) {
  Tracker tracker("proxlinear_step_blind", 1e-6);
  RngStream rng = pairing_stream(seed, "proxlinear_step_blind");
  for (std::size_t k = 0; k < count; ++k) {
    const Vector u = gaussian_vector(rng, 1);
    const Vector v = gaussian_vector(rng, 1);
    const double b = u[0] * rng.normal() * v[0] * rng.normal();
    const Vector xy = 1.5 * gaussian_vector(rng, 2);
    const double beta = log_uniform(rng, 0.5, 50.0);
    const ProblemInstance p = make_blind_deconvolution(row(u), row(v), make_vector({b}));
    const Vector closed = cf.proxlinear_step_blind(p, xy, 0, beta);
    const SubproblemModel model = make_subproblem_model(ModelFamily::prox_linear, p, xy, 0);
    const Vector oracle = generic_argmin(model, Regularizer::zero(), xy, beta, 1e-14);
    tracker.record((closed - oracle).norm(), [&] {
      return "u=" + text(u) + " v=" + text(v) + " b=" + format_double(b) + " base=" + text(xy) +
             " beta=" + format_double(beta) + " closed=" + text(closed) + " oracle=" + text(oracle);
    });
  }
  return tracker.finish();
}

// Random 1-D phase prox-point instance checked against the grid; returns
// (argument error, value error).
struct PhasePointCheck {
  double argument = 0.0;
  double value = 0.0;
  std::string description;
};

PhasePointCheck phase_point_instance(const ClosedForms& cf, RngStream& rng) {
  const double a = rng.normal();
  const double b = std::pow(a * rng.normal(), 2);
  const double x = 1.5 * rng.normal();
  const double beta = log_uniform(rng, 0.1, 100.0);
  auto f = [&](double y) { return std::abs(a * a * y * y - b) + 0.5 * beta * (y - x) * (y - x); };
  const double r = std::sqrt(2.0 * f(x) / beta) + 1e-3;
  const double lipschitz = 2.0 * a * a * (std::abs(x) + r) + beta * r;
  GridOptions options;
  options.lipschitz = lipschitz;
  const GridResult1D grid = grid_minimize(f, x - r, x + r, 1e-5, options);
  const ProblemInstance p = make_phase_retrieval(Matrix::Constant(1, 1, a), make_vector({b}));
  const double closed = cf.proxpoint_step_phase(p, make_vector({x}), 0, beta)[0];

  PhasePointCheck out;
  out.value = std::abs(f(closed) - grid.value);
  out.argument = std::abs(closed - grid.argmin);
  // several minimizers: any enumerated candidate attaining the minimum counts
  for (const StepCandidate& c : proxpoint_candidates_phase(p, make_vector({x}), 0, beta)) {
    if (f(c.point[0]) <= f(closed) + 1e-9) out.argument = std::min(out.argument, std::abs(c.point[0] - grid.argmin));
  }
  out.description = "a=" + format_double(a) + " b=" + format_double(b) + " x=" + format_double(x) +
                    " beta=" + format_double(beta) + " closed=" + format_double(closed) +
                    " grid=" + format_double(grid.argmin);
  return out;
}

OracleReport check_proxpoint_phase_argument(const ClosedForms& cf, std::size_t count, std::uint64_t seed) {
  Tracker tracker("proxpoint_step_phase", 1e-4);
  RngStream rng = pairing_stream(seed, "proxpoint_step_phase");
  for (std::size_t k = 0; k < count; ++k) {
    const PhasePointCheck c = phase_point_instance(cf, rng);
    tracker.record(c.argument, [&] { return c.description; });
  }
  return tracker.finish();
}

OracleReport check_proxpoint_phase_value(const ClosedForms& cf, std::size_t count, std::uint64_t seed) {
  Tracker tracker("proxpoint_step_phase_value", 1e-6);
  RngStream rng = pairing_stream(seed, "proxpoint_step_phase");
  for (std::size_t k = 0; k < count; ++k) {
    const PhasePointCheck c = phase_point_instance(cf, rng);
    tracker.record(c.value, [&] { return c.description; });
  }
  return tracker.finish();
}

OracleReport check_proxpoint_blind(const ClosedForms& cf, std::size_t count, std::uint64_t seed) {
  Tracker tracker("proxpoint_step_blind", 1e-3);
  RngStream rng = pairing_stream(seed, "proxpoint_step_blind");
  for (std::size_t k = 0; k < count; ++k) {
    const double u = rng.normal();
    const double v = rng.normal();
    const double b = u * rng.normal() * v * rng.normal();
    const double x0 = 1.5 * rng.normal();
    const double y0 = 1.5 * rng.normal();
    const double beta = log_uniform(rng, 0.5, 50.0);
    auto f = [&](double x, double y) {
      return std::abs(u * x * v * y - b) + 0.5 * beta * ((x - x0) * (x - x0) + (y - y0) * (y - y0));
    };
    const double r = std::sqrt(2.0 * f(x0, y0) / beta) + 1e-3;
    const double reach = std::max(std::abs(x0), std::abs(y0)) + r;
    // y -> min_x f(x, y) is Lipschitz with the bound on |df/dy| over the box;
    // for fixed y, f is convex in x and golden section minimizes it exactly.
    auto inner = [&](double y) {
      return golden_section_minimize([&](double x) { return f(x, y); }, x0 - r, x0 + r);
    };
    GridOptions options;
    options.lipschitz = std::abs(u * v) * reach + beta * r;
    const GridResult1D outer = grid_minimize([&](double y) { return inner(y).value; }, y0 - r, y0 + r, 1e-5, options);
    const GridResult1D best_x = inner(outer.argmin);
    struct {
      std::array<double, 2> argmin;
      double value;
    } grid{{best_x.argmin, outer.argmin}, best_x.value};
    const ProblemInstance p = make_blind_deconvolution(Matrix::Constant(1, 1, u), Matrix::Constant(1, 1, v),
                                                       make_vector({b}));
    const Vector base = make_vector({x0, y0});
    const Vector closed = cf.proxpoint_step_blind(p, base, 0, beta);
    const Vector g = make_vector({grid.argmin[0], grid.argmin[1]});
    double error = (closed - g).norm();
    const double closed_value = f(closed[0], closed[1]);
    for (const StepCandidate& c : cf.proxpoint_candidates_blind(p, base, 0, beta)) {
      if (f(c.point[0], c.point[1]) <= closed_value + 1e-9) error = std::min(error, (c.point - g).norm());
    }
    if (closed_value > grid.value + 1e-6) error = std::max(error, closed_value - grid.value);
    tracker.record(error, [&] {
      return "u=" + format_double(u) + " v=" + format_double(v) + " b=" + format_double(b) + " base=" +
             text(base) + " beta=" + format_double(beta) + " closed=" + text(closed) + " grid=" + text(g);
    });
  }
  return tracker.finish();
}

OracleReport check_blind_boundary(const ClosedForms& cf, std::size_t count, std::uint64_t seed) {
  Tracker tracker("blind_boundary_residual", 1e-8);
  RngStream rng = pairing_stream(seed, "blind_boundary_residual");
  for (std::size_t k = 0; k < count; ++k) {
    const Index d1 = 1 + static_cast<Index>(rng.uniform_index(3));
    const Index d2 = 1 + static_cast<Index>(rng.uniform_index(3));
    const Vector u = gaussian_vector(rng, d1);
    const Vector v = gaussian_vector(rng, d2);
    const double b = u.dot(gaussian_vector(rng, d1)) * v.dot(gaussian_vector(rng, d2));
    const Vector base = 1.5 * gaussian_vector(rng, d1 + d2);
    const double beta = log_uniform(rng, 0.1, 100.0);
    const ProblemInstance p = make_blind_deconvolution(row(u), row(v), make_vector({b}));
    double worst = 0.0;
    for (const StepCandidate& c : cf.proxpoint_candidates_blind(p, base, 0, beta)) {
      if (!c.label.starts_with("boundary")) continue;
      worst = std::max(worst, std::abs(u.dot(c.point.head(d1)) * v.dot(c.point.tail(d2)) - b));
    }
    tracker.record(worst, [&] {
      return "u=" + text(u) + " v=" + text(v) + " b=" + format_double(b) + " base=" + text(base) +
             " beta=" + format_double(beta);
    });
  }
  return tracker.finish();
}

OracleReport check_quartic(const ClosedForms& cf, std::size_t count, std::uint64_t seed) {
  Tracker tracker("quartic_real_roots", 1e-6);
  RngStream rng = pairing_stream(seed, "quartic_real_roots");
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<std::complex<double>> roots;
    std::vector<double> planted;
    const std::uint64_t shape = rng.uniform_index(4);
    if (shape == 3) {
      // repeated real roots
      const double r1 = std::round(4.0 * rng.normal()) / 4.0;
      const double r2 = r1 + 0.5 + std::round(4.0 * std::abs(rng.normal())) / 4.0;
      const std::uint64_t split = 1 + rng.uniform_index(3);
      for (std::uint64_t j = 0; j < 4; ++j) planted.push_back(j < split ? r1 : r2);
    } else {
      const std::uint64_t reals = 2 * shape;
      while (planted.size() < reals) {
        const double r = 2.0 * rng.normal();
        bool separated = true;
        for (double q : planted) separated = separated && std::abs(q - r) > 0.05 * (1.0 + std::abs(r));
        if (separated) planted.push_back(r);
      }
      for (std::uint64_t j = reals; j < 4; j += 2) {
        const std::complex<double> z(2.0 * rng.normal(), 0.1 + std::abs(rng.normal()));
        roots.push_back(z);
        roots.push_back(std::conj(z));
      }
    }
    for (double r : planted) roots.emplace_back(r, 0.0);
    const double lead = (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::exp(rng.normal());
    std::vector<std::complex<double>> c{lead};
    for (const auto& z : roots) {
      std::vector<std::complex<double>> next(c.size() + 1, 0.0);
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j] += c[j];
        next[j + 1] -= c[j] * z;
      }
      c = std::move(next);
    }
    QuarticPoly q;
    for (std::size_t j = 0; j < 5; ++j) q.coeffs[j] = c[j].real();
    std::sort(planted.begin(), planted.end());
    const std::vector<double> found = cf.quartic_real_roots(q);
    double error = 0.0;
    if (found.size() != planted.size()) {
      error = kInf;
    } else {
      for (std::size_t j = 0; j < found.size(); ++j) {
        error = std::max(error, std::abs(found[j] - planted[j]) / (1.0 + std::abs(planted[j])));
        const double residual = std::abs(q(found[j])) / (1.0 + q.scale());
        if (residual > 1e-8) error = std::max(error, residual);
      }
    }
    tracker.record(error, [&] {
      std::string s = "coeffs=(";
      for (std::size_t j = 0; j < 5; ++j) s += (j ? "," : "") + format_double(q.coeffs[j]);
      s += ") planted=" + text(Eigen::Map<const Vector>(planted.data(), static_cast<Index>(planted.size())));
      return s;
    });
  }
  return tracker.finish();
}

Regularizer random_regularizer(RngStream& rng, Index d) {
  switch (rng.uniform_index(5)) {
    case 0: return Regularizer::zero();
    case 1: return Regularizer::l1(0.1 + rng.uniform());
    case 2: return Regularizer::ball(0.5 + 2.0 * rng.uniform());
    case 3: return Regularizer::squared_l2(0.1 + 2.0 * rng.uniform());
    default: {
      Vector lower = -0.5 - rng.uniform() * Vector::Ones(d).array();
      Vector upper = 0.2 + rng.uniform() * Vector::Ones(d).array();
      return Regularizer::box(lower, upper);
    }
  }
}

OracleReport check_cvar(const ClosedForms& cf, std::size_t count, std::uint64_t seed) {
  Tracker tracker("cvar_model_step", 1e-6);
  RngStream rng = pairing_stream(seed, "cvar_model_step");
  for (std::size_t k = 0; k < count; ++k) {
    const Index d = 1 + static_cast<Index>(rng.uniform_index(3));
    const Vector a = gaussian_vector(rng, d);
    const double b = rng.normal();
    const double alpha = 0.05 + 0.9 * rng.uniform();
    const Vector x = gaussian_vector(rng, d);
    const double loss = std::abs(a.dot(x) - b);
    double level = rng.normal();
    switch (k % 3) {
      case 1: level = loss + 10.0; break;  // hinge deeply inactive
      case 2: level = loss - 10.0; break;  // hinge deeply active
      default: break;
    }
    const double beta = log_uniform(rng, 0.5, 20.0);
    const Regularizer reg = random_regularizer(rng, d);
    const ProblemInstance p = make_cvar(row(a), make_vector({b}), alpha);
    Vector z(d + 1);
    z << x, level;
    const Vector closed = cf.cvar_model_step(p, z, 0, beta, reg);
    const SubproblemModel model = make_subproblem_model(ModelFamily::prox_linear, p, z, 0);
    const Vector oracle = generic_argmin(model, reg, z, beta, 1e-14, d);
    auto objective = [&](const Vector& y) {
      return model.value(y) + reg.value(y.head(d)) + 0.5 * beta * (y - z).squaredNorm();
    };
    // distance bound from quadratic growth; a pointwise comparison would be
    // limited by the oracle's own accuracy
    const double excess = objective(closed) - objective(oracle);
    tracker.record(std::sqrt(2.0 * std::max(0.0, excess) / beta), [&] {
      return "a=" + text(a) + " b=" + format_double(b) + " alpha=" + format_double(alpha) + " z=" + text(z) +
             " beta=" + format_double(beta) + " reg=" + std::string(to_string(reg.kind())) +
             " closed=" + text(closed) + " oracle=" + text(oracle);
    });
  }
  return tracker.finish();
}

OracleReport check_subgradient(const ClosedForms& cf, std::size_t count, std::uint64_t seed) {
  Tracker tracker("stochastic_subgradient", 1e-4);
  RngStream rng = pairing_stream(seed, "stochastic_subgradient");
  for (std::size_t k = 0; k < count; ++k) {
    const Index d = 1 + static_cast<Index>(rng.uniform_index(3));
    ProblemInstance p;
    switch (k % 4) {
      case 0: p = make_phase_retrieval(row(gaussian_vector(rng, d)), make_vector({std::abs(rng.normal())})); break;
      case 1:
        p = make_blind_deconvolution(row(gaussian_vector(rng, d)), row(gaussian_vector(rng, d)),
                                     make_vector({rng.normal()}));
        break;
      case 2: p = make_lad(row(gaussian_vector(rng, d)), make_vector({rng.normal()})); break;
      default: p = make_cvar(row(gaussian_vector(rng, d)), make_vector({rng.normal()}), 0.05 + 0.9 * rng.uniform()); break;
    }
    const Vector x = gaussian_vector(rng, p.dim());
    const Vector g = cf.stochastic_subgradient(p, x, 0).vector;
    const double residual =
        finite_difference_check([&](const Vector& y) { return datum_loss(p, y, 0); }, x, g, 1e-6);
    tracker.record(residual / (1.0 + g.norm()), [&] {
      return std::string(to_string(p.kind)) + " x=" + text(x) + " G=" + text(g);
    });
  }
  return tracker.finish();
}

OracleReport check_regularizer_prox(const ClosedForms& cf, std::size_t count, std::uint64_t seed) {
  Tracker tracker("regularizer_prox", 1e-10);
  RngStream rng = pairing_stream(seed, "regularizer_prox");
  for (std::size_t k = 0; k < count; ++k) {
    const Index d = 1 + static_cast<Index>(rng.uniform_index(3));
    const Regularizer reg = random_regularizer(rng, d);
    const Vector x = 2.0 * gaussian_vector(rng, d);
    const double step = log_uniform(rng, 0.1, 10.0);
    auto f = [&](const Vector& y) { return reg.value(y) + (y - x).squaredNorm() / (2.0 * step); };
    const Vector closed = cf.regularizer_prox(reg, x, step);
    SubproblemModel zero;
    zero.value = [](const Vector&) { return 0.0; };
    zero.subgradient = [d](const Vector&) { return Vector::Zero(d); };
    const Vector oracle = generic_argmin(zero, reg, x, 1.0 / step, 1e-12);
    tracker.record(std::max(0.0, f(closed) - f(oracle)), [&] {
      return std::string(to_string(reg.kind())) + " x=" + text(x) + " step=" + format_double(step) +
             " closed=" + text(closed) + " oracle=" + text(oracle);
    });
  }
  return tracker.finish();
}

OracleReport check_model_step(const ClosedForms&, std::size_t count, std::uint64_t seed) {
  Tracker tracker("model_step", 1e-6);
  RngStream rng = pairing_stream(seed, "model_step");
  for (std::size_t k = 0; k < count; ++k) {
    const Index d = 1 + static_cast<Index>(rng.uniform_index(2));
    ProblemInstance p;
    ModelFamily family = ModelFamily::prox_linear;
    switch (k % 4) {
      case 0: p = make_phase_retrieval(row(gaussian_vector(rng, d)), make_vector({std::abs(rng.normal())})); break;
      case 1:
        p = make_blind_deconvolution(row(gaussian_vector(rng, 1)), row(gaussian_vector(rng, 1)),
                                     make_vector({rng.normal()}));
        break;
      case 2: p = make_lad(row(gaussian_vector(rng, d)), make_vector({rng.normal()})); break;
      default:
        p = make_lad(row(gaussian_vector(rng, d)), make_vector({rng.normal()}));
        family = ModelFamily::prox_point;
        break;
    }
    const Regularizer reg = rng.uniform() < 0.5 ? Regularizer::zero() : Regularizer::squared_l2(0.2 + rng.uniform());
    const Vector base = 1.5 * gaussian_vector(rng, p.dim());
    const double beta = log_uniform(rng, 0.5, 20.0);
    const Vector closed = model_step(family, p, reg, base, 0, beta);
    const Vector oracle = generic_argmin(make_subproblem_model(family, p, base, 0), reg, base, beta, 1e-14);
    tracker.record((closed - oracle).norm(), [&] {
      return std::string(to_string(family)) + " on " + std::string(to_string(p.kind)) + " reg=" +
             std::string(to_string(reg.kind())) + " base=" + text(base) + " beta=" + format_double(beta);
    });
  }
  return tracker.finish();
}

OracleReport check_grid_vs_generic(const ClosedForms&, std::size_t count, std::uint64_t seed) {
  Tracker tracker("grid_vs_generic", 1e-6);
  RngStream rng = pairing_stream(seed, "grid_vs_generic");
  for (std::size_t k = 0; k < count; ++k) {
    const double a = rng.normal();
    const double b = rng.normal();
    const double w = rng.uniform();
    const double x = 2.0 * rng.normal();
    const double beta = log_uniform(rng, 0.5, 20.0);
    auto f = [&](double y) { return std::abs(a * y - b) + w * std::abs(y) + 0.5 * beta * (y - x) * (y - x); };
    const double r = std::sqrt(2.0 * f(x) / beta) + 1e-3;
    const double grid = grid_argmin_1d(f, x, r, std::abs(a) + w + beta * r);
    SubproblemModel model;
    model.value = [&](const Vector& y) { return std::abs(a * y[0] - b); };
    model.subgradient = [&](const Vector& y) {
      const double s = a * y[0] - b;
      return make_vector({(s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0)) * a});
    };
    const double generic = generic_argmin(model, Regularizer::l1(w), make_vector({x}), beta, 1e-14)[0];
    tracker.record(std::abs(grid - generic), [&] {
      return "a=" + format_double(a) + " b=" + format_double(b) + " w=" + format_double(w) + " x=" +
             format_double(x) + " beta=" + format_double(beta);
    });
  }
  return tracker.finish();
}

}  // namespace

const std::vector<Pairing>& registered_pairings() {
  static const std::vector<Pairing> pairings{
      {"solve_linear_model_prox", 200, check_linear_model_prox},
      {"proxlinear_step_phase", 200, check_proxlinear_phase},
      {"proxlinear_step_blind", 200, check_proxlinear_blind},
      {"proxpoint_step_phase", 300, check_proxpoint_phase_argument},
      {"proxpoint_step_phase_value", 300, check_proxpoint_phase_value},
      {"proxpoint_step_blind", 100, check_proxpoint_blind},
      {"blind_boundary_residual", 300, check_blind_boundary},
      {"quartic_real_roots", 1000, check_quartic},
      {"cvar_model_step", 300, check_cvar},
      {"stochastic_subgradient", 400, check_subgradient},
      {"regularizer_prox", 300, check_regularizer_prox},
      {"model_step", 200, check_model_step},
      {"grid_vs_generic", 100, check_grid_vs_generic},
  };
  return pairings;
}

const Pairing& find_pairing(std::string_view name) {
  for (const Pairing& p : registered_pairings()) {
    if (p.name == name) return p;
  }
  throw Error(Errc::invalid_argument, "unknown pairing '" + std::string(name) + "'");
}

VerifySummary verify_all(const VerifyOptions& options) {
  const ClosedForms cf = closed_forms(options.fault);
  VerifySummary summary;
  for (const Pairing& pairing : registered_pairings()) {
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(options.scale * static_cast<double>(pairing.default_count))));
    OracleReport report;
    try {
      report = pairing.run(cf, count, options.seed);
    } catch (const std::exception& e) {
      report.op_name = pairing.name;
      report.max_abs_error = kInf;
      report.worst_instance = std::string("exception: ") + e.what();
      report.passed = false;
    }
    summary.passed = summary.passed && report.passed;
    if (options.progress) options.progress(report);
    summary.reports.push_back(std::move(report));
  }
  return summary;
}

void write_verify_summary(std::ostream& out, const VerifySummary& summary) {
  std::size_t passed = 0;
  for (const OracleReport& r : summary.reports) {
    out << (r.passed ? "PASS " : "FAIL ") << r.op_name << " instances=" << r.instances_checked
        << " max_abs_error=" << format_double(r.max_abs_error) << " tolerance=" << format_double(r.tolerance);
    if (!r.passed) out << " worst: " << r.worst_instance;
    out << '\n';
    passed += r.passed ? 1 : 0;
  }
  out << (summary.passed ? "PASS" : "FAIL") << ' ' << passed << '/' << summary.reports.size()
      << " pairings passed\n";
}

}  // namespace wcopt
