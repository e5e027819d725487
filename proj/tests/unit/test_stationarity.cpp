#include <gtest/gtest.h>

#include <cmath>

#include "wcopt/error.hpp"
#include "wcopt/stationarity.hpp"

using namespace wcopt;

TEST(Envelope, AbsoluteValue) {
  const ProblemInstance p = make_lad(Matrix::Ones(1, 1), make_vector({0.0}));
  const EnvelopeReport r = moreau_envelope(p, Regularizer::zero(), make_vector({3.0}), 1.0);
  EXPECT_NEAR(r.envelope_value, 2.5, 1e-8);
  EXPECT_LE(r.inner_suboptimality, 1e-8);
  // the inner problem is 1-strongly convex, so the value gap bounds the distance
  const double reach = std::sqrt(2.0 * r.inner_suboptimality);
  EXPECT_NEAR(r.prox_point[0], 2.0, reach);
  EXPECT_NEAR(r.grad_norm, 1.0, reach);
  const EnvelopeReport tight = moreau_envelope(p, Regularizer::zero(), make_vector({3.0}), 1.0, 1e-14);
  EXPECT_NEAR(tight.prox_point[0], 2.0, 1e-6);
}

TEST(Envelope, GlobalMinimizer) {
  RngStream rng(50, 0);
  const ProblemInstance p = generate_phase_retrieval(rng, 4, 12);
  const double lambda = default_envelope_lambda(p);
  const EnvelopeReport r = moreau_envelope(p, Regularizer::zero(), p.ground_truth, lambda);
  // |x - x_hat|^2 / (2 lambda) <= gap, so grad_norm <= sqrt(2 gap / lambda)
  EXPECT_LE(r.grad_norm, std::sqrt(2.0 * r.inner_suboptimality / lambda) + 1e-12);
  EXPECT_LE(r.envelope_value, 1e-8);
}

TEST(Envelope, SmoothConvexMinimizer) {
  WeaklyConvexFunction f;
  f.value = [](const Vector& x) { return 0.5 * (x.array() - 1.0).square().sum(); };
  f.subgradient = [](const Vector& x) { return (x.array() - 1.0).matrix().eval(); };
  const EnvelopeReport r = moreau_envelope(f, Regularizer::zero(), Vector::Ones(3), 0.5);
  EXPECT_LE(r.grad_norm, 1e-3);
}

TEST(Envelope, ParameterChecks) {
  RngStream rng(51, 0);
  const ProblemInstance p = generate_phase_retrieval(rng, 3, 9);
  try {
    moreau_envelope(p, Regularizer::zero(), p.ground_truth, 1.0 / p.constants.rho);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::envelope_parameter);
  }
  EXPECT_THROW(moreau_envelope(p, Regularizer::zero(), p.ground_truth, 0.0), Error);
  EXPECT_DOUBLE_EQ(default_envelope_lambda(p), 0.5 / p.constants.rho);
}

TEST(Envelope, ValueBelowObjective) {
  RngStream rng(52, 0);
  const ProblemInstance p = generate_blind_deconvolution(rng, 2, 2, 8);
  const double lambda = default_envelope_lambda(p);
  for (int k = 0; k < 10; ++k) {
    const Vector x = gaussian_vector(rng, 4);
    const EnvelopeReport r = moreau_envelope(p, Regularizer::zero(), x, lambda);
    EXPECT_LE(r.envelope_value, objective_value(p, x) + 1e-12);
    EXPECT_NEAR(r.grad_norm, (x - r.prox_point).norm() / lambda, 1e-12);
  }
}

TEST(ProxGradient, Examples) {
  SmoothFunction f;
  f.value = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  f.gradient = [](const Vector& x) { return x; };
  const Vector x = make_vector({0.3, -0.4});
  EXPECT_LT((prox_gradient_mapping(f, Regularizer::zero(), x, 1.0) - x).norm(), 1e-15);
  EXPECT_LT((prox_gradient_mapping(f, Regularizer::ball(5.0), x, 0.5) - x).norm(), 1e-15);

  SmoothFunction g;
  const Vector target = make_vector({3.0, 0.0});
  g.value = [&](const Vector& y) { return 0.5 * (y - target).squaredNorm(); };
  g.gradient = [&](const Vector& y) { return (y - target).eval(); };
  // (1, 0) minimizes g over the unit ball
  EXPECT_LT(prox_gradient_mapping(g, Regularizer::ball(1.0), make_vector({1.0, 0.0}), 0.5).norm(), 1e-15);
}
