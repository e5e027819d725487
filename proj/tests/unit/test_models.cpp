#include <gtest/gtest.h>

#include <cmath>

#include "wcopt/error.hpp"
#include "wcopt/models.hpp"
#include "wcopt/problem.hpp"

using namespace wcopt;

namespace {

Matrix row(std::initializer_list<double> entries) {
  const Vector v = make_vector(entries);
  return v.transpose();
}

const ModelFamily kFamilies[] = {ModelFamily::linear, ModelFamily::prox_linear, ModelFamily::prox_point};

std::vector<ProblemInstance> small_instances() {
  RngStream rng(31, 0);
  return {generate_phase_retrieval(rng, 3, 6), generate_blind_deconvolution(rng, 2, 3, 6), generate_lad(rng, 3, 6),
          generate_cvar(rng, 3, 6, 0.25)};
}

}  // namespace

TEST(Models, FamilyStrings) {
  EXPECT_EQ(to_string(ModelFamily::linear), "sgd");
  EXPECT_EQ(to_string(ModelFamily::prox_linear), "prox-linear");
  EXPECT_EQ(to_string(ModelFamily::prox_point), "prox-point");
  for (ModelFamily f : kFamilies) EXPECT_EQ(parse_model_family(to_string(f)), f);
  EXPECT_THROW(parse_model_family("adam"), Error);
}

TEST(Models, AgreeAtBase) {
  RngStream rng(32, 0);
  for (const ProblemInstance& p : small_instances()) {
    const Vector x = gaussian_vector(rng, p.dim());
    for (ModelFamily f : kFamilies) {
      for (Index i = 0; i < p.m(); ++i) EXPECT_DOUBLE_EQ(model_value(f, p, x, i, x), datum_loss(p, x, i));
    }
  }
}

TEST(Models, ProxPointIsTheLoss) {
  RngStream rng(33, 0);
  for (const ProblemInstance& p : small_instances()) {
    const Vector x = gaussian_vector(rng, p.dim());
    const Vector y = gaussian_vector(rng, p.dim());
    EXPECT_DOUBLE_EQ(model_value(ModelFamily::prox_point, p, x, 1, y), datum_loss(p, y, 1));
  }
}

TEST(Models, ProxLinearExample) {
  const ProblemInstance p = make_phase_retrieval(row({1.0, 0.0}), make_vector({1.0}));
  const Vector base = make_vector({2.0, 0.0}), y = make_vector({1.0, 0.0});
  // c(x) + c'(x)(y - x) = 4 + 4 * (-1)
  const double by_hand = std::abs(4.0 + 2.0 * 2.0 * (y[0] - base[0]) - 1.0);
  EXPECT_DOUBLE_EQ(model_value(ModelFamily::prox_linear, p, base, 0, y), by_hand);
  EXPECT_DOUBLE_EQ(by_hand, 1.0);
}

TEST(Models, OneSidedAccuracy) {
  RngStream rng(34, 0);
  for (const ProblemInstance& p : small_instances()) {
    for (ModelFamily f : kFamilies) {
      const double tau = model_constants(f, p).tau;
      for (int k = 0; k < 1000; ++k) {
        const Vector x = 2.0 * gaussian_vector(rng, p.dim());
        const Vector y = 2.0 * gaussian_vector(rng, p.dim());
        double excess = 0.0;
        for (Index i = 0; i < p.m(); ++i) excess += model_value(f, p, x, i, y) - datum_loss(p, y, i);
        excess /= static_cast<double>(p.m());
        ASSERT_LE(excess, 0.5 * tau * (y - x).squaredNorm() + 1e-8)
            << to_string(p.kind) << " " << to_string(f);
      }
    }
  }
}

TEST(Models, ConstantsPerFamily) {
  for (const ProblemInstance& p : small_instances()) {
    const TheoreticalConstants point = model_constants(ModelFamily::prox_point, p);
    EXPECT_EQ(point.tau, 0.0);
    EXPECT_EQ(point.eta, p.constants.rho);
    EXPECT_EQ(model_constants(ModelFamily::linear, p).tau, p.constants.rho);
    if (p.is_convex()) EXPECT_EQ(model_constants(ModelFamily::prox_linear, p).tau, 0.0);
    for (ModelFamily f : kFamilies) {
      const TheoreticalConstants c = model_constants(f, p);
      EXPECT_GT(c.rho_bar, c.tau + c.eta);
    }
  }
}

TEST(Models, LipschitzAtBase) {
  RngStream rng(35, 0);
  for (const ProblemInstance& p : small_instances()) {
    for (ModelFamily f : {ModelFamily::linear, ModelFamily::prox_linear}) {
      for (int k = 0; k < 200; ++k) {
        const Vector x = gaussian_vector(rng, p.dim());
        const Vector y = gaussian_vector(rng, p.dim());
        const Index i = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(p.m())));
        const double L = stochastic_subgradient(p, x, i).per_datum_lipschitz;
        EXPECT_LE(model_value(f, p, x, i, x) - model_value(f, p, x, i, y), L * (x - y).norm() + 1e-12);
      }
    }
  }
}

TEST(Models, LinearStepIsSubgradientStep) {
  RngStream rng(36, 0);
  for (const ProblemInstance& p : small_instances()) {
    const Vector x = gaussian_vector(rng, p.dim());
    const Vector g = stochastic_subgradient(p, x, 2).vector;
    const Vector y = model_step(ModelFamily::linear, p, Regularizer::zero(), x, 2, 4.0);
    EXPECT_LT((y - (x - g / 4.0)).norm(), 1e-15);
    const Regularizer ball = Regularizer::ball(0.5);
    const Vector z = model_step(ModelFamily::linear, p, ball, x, 2, 4.0);
    EXPECT_EQ(z, regularizer_prox(p, ball, x - g / 4.0, 0.25));
  }
}

TEST(Models, ProxPointExample) {
  const ProblemInstance p = make_phase_retrieval(row({1.0, 0.0}), make_vector({1.0}));
  const Vector y = model_step(ModelFamily::prox_point, p, Regularizer::zero(), make_vector({2.0, 0.0}), 0, 10.0);
  EXPECT_NEAR(y[0], 5.0 / 3.0, 1e-14);
  EXPECT_EQ(y[1], 0.0);
}

TEST(Models, StepBeatsPerturbations) {
  RngStream rng(37, 0);
  const Regularizer regs[] = {Regularizer::zero(), Regularizer::squared_l2(0.5), Regularizer::ball(1.0)};
  for (const ProblemInstance& p : small_instances()) {
    for (ModelFamily f : kFamilies) {
      for (const Regularizer& r : regs) {
        const Vector x = 0.5 * gaussian_vector(rng, p.dim());
        const double beta = model_constants(f, p).eta + 1.0 + 5.0 * rng.uniform();
        const Vector y = model_step(f, p, r, x, 0, beta);
        const double best = subproblem_value(f, p, r, x, 0, beta, y);
        ASSERT_TRUE(std::isfinite(best));
        for (int k = 0; k < 1000; ++k) {
          const Vector c = regularizer_prox(p, r, y + 0.2 * gaussian_vector(rng, p.dim()), 1.0);
          ASSERT_LE(best, subproblem_value(f, p, r, x, 0, beta, c) + 1e-9)
              << to_string(p.kind) << " " << to_string(f) << " " << to_string(r.kind());
        }
      }
    }
  }
}

TEST(Models, NonconvexSubproblemRejected) {
  const ProblemInstance p = make_phase_retrieval(row({1.0, 0.0}), make_vector({1.0}));
  try {
    model_step(ModelFamily::prox_point, p, Regularizer::zero(), make_vector({2.0, 0.0}), 0, 0.5 * p.constants.rho);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::nonconvex_subproblem);
  }
  StepOptions relaxed;
  relaxed.require_convex_subproblem = false;
  EXPECT_NO_THROW(model_step(ModelFamily::prox_point, p, Regularizer::zero(), make_vector({2.0, 0.0}), 0,
                             0.5 * p.constants.rho, relaxed));
}
