#include <gtest/gtest.h>

#include <cmath>

#include "wcopt/algorithms.hpp"
#include "wcopt/error.hpp"

using namespace wcopt;

namespace {

ProblemInstance abs_value() { return make_lad(Matrix::Ones(1, 1), make_vector({0.0})); }

Schedule constant_alpha(double gamma, std::size_t horizon) {
  ScheduleParams params;
  params.gamma = gamma;
  params.allow_large_gamma = true;
  return make_schedule(ScheduleKind::constant_alpha, params, horizon);
}

}  // namespace

TEST(Schedule, ConstantAlpha) {
  const Schedule s = constant_alpha(1.0, 3);
  ASSERT_EQ(s.steps(), 4u);
  for (double a : s.alpha) EXPECT_DOUBLE_EQ(a, 0.5);
  const auto w = s.psg_weights();
  for (double v : w) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(Schedule, ConstantBeta) {
  ScheduleParams params;
  params.gamma = 0.5;
  params.rho_bar = 3.0;
  const Schedule s = make_schedule(ScheduleKind::constant_beta, params, 8);
  for (double b : s.beta) EXPECT_DOUBLE_EQ(b, 3.0 + 3.0 / 0.5);
  const auto w = s.model_weights(1.0);
  ASSERT_EQ(w.size(), 9u);
  for (double v : w) EXPECT_NEAR(v, 1.0 / 9.0, 1e-15);
  EXPECT_TRUE(s.model_weights(100.0).empty());
}

TEST(Schedule, StronglyConvex) {
  ScheduleParams params;
  params.mu = 2.0;
  const Schedule s = make_schedule(ScheduleKind::strongly_convex, params, 4);
  for (std::size_t t = 0; t < s.steps(); ++t) EXPECT_DOUBLE_EQ(s.beta[t], static_cast<double>(t + 1));
}

TEST(Schedule, LargeGammaWarning) {
  ScheduleParams params;
  params.gamma = 1.0;
  params.rho = 2.0;
  EXPECT_FALSE(make_schedule(ScheduleKind::constant_alpha, params, 3).warnings.empty());
  params.allow_large_gamma = true;
  EXPECT_TRUE(make_schedule(ScheduleKind::constant_alpha, params, 3).warnings.empty());
}

TEST(Schedule, Errors) {
  ScheduleParams params;
  EXPECT_THROW(make_schedule(ScheduleKind::constant_alpha, params, 3), Error);
  params.gamma = 1.0;
  EXPECT_THROW(make_schedule(ScheduleKind::constant_alpha, params, 0), Error);
  params.custom_beta = {1.0, 2.0};
  EXPECT_THROW(make_schedule(ScheduleKind::custom, params, 3), Error);
}

TEST(Psg, AbsoluteValueTrajectory) {
  RunOptions options;
  options.retain_trajectory = true;
  RngStream rng(1, 1);
  const RunRecord r = run_psg(abs_value(), Regularizer::zero(), constant_alpha(1.0, 3), make_vector({1.0}), rng, options);
  ASSERT_EQ(r.trajectory.size(), 5u);
  const double expected[] = {1.0, 0.5, 0.0, 0.0, 0.0};
  for (int t = 0; t < 5; ++t) EXPECT_DOUBLE_EQ(r.trajectory[t][0], expected[t]);
}

TEST(Psg, LinearFamilyMatchesBitwise) {
  RngStream seed_rng(40, 0);
  const ProblemInstance p = generate_phase_retrieval(seed_rng, 4, 12);
  const Vector x0 = unit_sphere_point(seed_rng, 4);
  // beta canonical, alpha_t = 1/beta_t exactly
  ScheduleParams params;
  params.custom_beta = std::vector<double>(201, 0.0);
  for (std::size_t t = 0; t < 201; ++t) params.custom_beta[t] = 20.0 + 0.1 * static_cast<double>(t);
  const Schedule s = make_schedule(ScheduleKind::custom, params, 200);
  RunOptions options;
  options.retain_trajectory = true;
  RngStream a(9, 3), b(9, 3);
  const RunRecord psg = run_psg(p, Regularizer::ball(2.0), s, x0, a, options);
  const RunRecord lin = run_model_based(p, Regularizer::ball(2.0), ModelFamily::linear, s, x0, b, options);
  ASSERT_EQ(psg.trajectory.size(), lin.trajectory.size());
  for (std::size_t t = 0; t < psg.trajectory.size(); ++t) EXPECT_EQ(psg.trajectory[t], lin.trajectory[t]);
}

TEST(Psg, Feasibility) {
  RngStream seed_rng(41, 0);
  const ProblemInstance p = generate_phase_retrieval(seed_rng, 3, 9);
  RunOptions options;
  options.retain_trajectory = true;
  RngStream rng(2, 2);
  const RunRecord r = run_psg(p, Regularizer::ball(1.0), constant_alpha(0.5, 100), make_vector({0.0, 3.0, 0.0}),
                              rng, options);
  for (std::size_t t = 1; t < r.trajectory.size(); ++t) EXPECT_LE(r.trajectory[t].norm(), 1.0);
}

TEST(Psg, Determinism) {
  RngStream seed_rng(42, 0);
  const ProblemInstance p = generate_lad(seed_rng, 3, 9);
  RngStream a(5, 5), b(5, 5);
  const RunRecord r1 = run_psg(p, Regularizer::zero(), constant_alpha(0.1, 90), Vector::Zero(3), a);
  const RunRecord r2 = run_psg(p, Regularizer::zero(), constant_alpha(0.1, 90), Vector::Zero(3), b);
  EXPECT_EQ(r1.final_iterate, r2.final_iterate);
  EXPECT_EQ(r1.t_star, r2.t_star);
  EXPECT_EQ(r1.objective_per_epoch, r2.objective_per_epoch);
  EXPECT_EQ(r1.epoch_iterates.size(), 11u);
}

TEST(Psg, Divergence) {
  const ProblemInstance p = make_phase_retrieval(Matrix::Constant(1, 1, 10.0), make_vector({0.0}));
  ScheduleParams params;
  params.custom_beta = std::vector<double>(200, 1e-3);
  const Schedule s = make_schedule(ScheduleKind::custom, params, 199);
  RngStream rng(3, 3);
  try {
    run_psg(p, Regularizer::zero(), s, make_vector({1.0}), rng);
    FAIL();
  } catch (const DivergedRun& e) {
    EXPECT_GT(e.step(), 0u);
  }
}

TEST(ModelBased, ProxPointAbsoluteValue) {
  ScheduleParams params;
  params.custom_beta = {1.0, 1.0};
  const Schedule s = make_schedule(ScheduleKind::custom, params, 1);
  RunOptions options;
  options.retain_trajectory = true;
  RngStream rng(4, 4);
  const RunRecord r =
      run_model_based(abs_value(), Regularizer::zero(), ModelFamily::prox_point, s, make_vector({1.0}), rng, options);
  EXPECT_EQ(r.trajectory[1][0], 0.0);
}

TEST(ModelBased, ProxLinearDecreasesPhaseObjective) {
  int improved = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RngStream rng(seed, 0);
    const ProblemInstance p = generate_phase_retrieval(rng, 10, 30);
    const Vector x0 = unit_sphere_point(rng, 10);
    const Schedule s = constant_alpha(0.1, 100 * 30 - 1);
    const RunRecord r = run_model_based(p, Regularizer::zero(), ModelFamily::prox_linear, s, x0, rng);
    if (r.final_objective < r.objective_per_epoch.front()) ++improved;
  }
  EXPECT_GE(improved, 48);
}

TEST(Selection, DegenerateAndDeterministic) {
  RunOptions options;
  options.retain_trajectory = true;
  RngStream rng(6, 6);
  const RunRecord r = run_psg(abs_value(), Regularizer::zero(), constant_alpha(0.1, 4), make_vector({1.0}), rng, options);
  RngStream pick(1, 2);
  const auto [t, x] = select_iterate(r, {0, 0, 0, 0, 1}, pick);
  EXPECT_EQ(t, 4u);
  EXPECT_EQ(x, r.trajectory[4]);
  RngStream p1(8, 8), p2(8, 8);
  EXPECT_EQ(select_iterate(r, {1, 1, 1, 1, 1}, p1).first, select_iterate(r, {1, 1, 1, 1, 1}, p2).first);
}

TEST(Selection, Frequencies) {
  RunOptions options;
  options.retain_trajectory = true;
  RngStream rng(7, 7);
  const RunRecord r = run_psg(abs_value(), Regularizer::zero(), constant_alpha(0.1, 3), make_vector({1.0}), rng, options);
  const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
  std::vector<int> counts(4, 0);
  RngStream pick(9, 9);
  const int n = 100000;
  for (int k = 0; k < n; ++k) ++counts[select_iterate(r, w, pick).first];
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(counts[j], n * w[j], 3 * std::sqrt(n * w[j] * (1 - w[j])));
}

TEST(Selection, RequiresTrajectory) {
  RngStream rng(7, 7);
  const RunRecord r = run_psg(abs_value(), Regularizer::zero(), constant_alpha(0.1, 3), make_vector({1.0}), rng);
  RngStream pick(1, 1);
  EXPECT_THROW(select_iterate(r, {1, 1, 1, 1}, pick), Error);
}

TEST(Averaging, Uniform) {
  RunOptions options;
  options.retain_trajectory = true;
  RngStream seed_rng(43, 0);
  const ProblemInstance p = generate_lad(seed_rng, 2, 5);
  RngStream rng(1, 1);
  const RunRecord r = run_psg(p, Regularizer::zero(), constant_alpha(0.3, 5), make_vector({1.0, 1.0}), rng, options);
  Vector plain = Vector::Zero(2);
  for (std::size_t t = 1; t <= 6; ++t) plain += r.trajectory[t];
  EXPECT_LT((weighted_average(r, AveragingMode::uniform) - plain / 6.0).norm(), 1e-14);
}

TEST(Averaging, StronglyConvexCoefficients) {
  const auto c = averaging_coefficients(AveragingMode::strongly_convex, {1.0, 1.0});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_DOUBLE_EQ(c[0], 0.4);
  EXPECT_DOUBLE_EQ(c[1], 0.6);
}

TEST(Averaging, RunningAverageMatchesTrajectory) {
  RngStream seed_rng(44, 0);
  const ProblemInstance p = generate_lad(seed_rng, 3, 6);
  ScheduleParams params;
  params.mu = 1.0;
  const Schedule s = make_schedule(ScheduleKind::strongly_convex, params, 40);
  RunOptions options;
  options.retain_trajectory = true;
  options.averaging = AveragingMode::strongly_convex;
  RngStream rng(2, 2);
  const RunRecord r = run_model_based(p, Regularizer::squared_l2(1.0), ModelFamily::prox_point, s,
                                      make_vector({1.0, 2.0, 3.0}), rng, options);
  EXPECT_LT((r.averaged_iterate - weighted_average(r, AveragingMode::strongly_convex)).norm(), 1e-12);
}
