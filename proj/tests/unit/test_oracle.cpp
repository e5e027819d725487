#include <gtest/gtest.h>

#include <cmath>

#include "wcopt/error.hpp"
#include "wcopt/oracle.hpp"
#include "wcopt/problem.hpp"
#include "wcopt/verify.hpp"

using namespace wcopt;

TEST(Grid, Quadratic) {
  const GridResult1D r = grid_minimize([](double y) { return (y - 1) * (y - 1); }, -3, 3, 1e-4);
  EXPECT_NEAR(r.argmin, 1.0, 1e-4);
}

TEST(Grid, ProxPointExample) {
  auto f = [](double y) { return std::abs(y * y - 1) + 5 * (y - 2) * (y - 2); };
  const GridResult1D r = grid_minimize(f, -3, 3, 1e-6);
  EXPECT_NEAR(r.argmin, 5.0 / 3.0, 1e-6);
  EXPECT_NEAR(r.value, 21.0 / 9.0, 1e-9);
}

TEST(Grid, RefinementNeverHurts) {
  auto f = [](double y) { return std::abs(std::sin(3 * y)) + 0.1 * y * y; };
  GridOptions plain;
  plain.refine = false;
  double previous = grid_minimize(f, -2, 2, 1e-1, plain).value;
  for (double h : {5e-2, 2.5e-2, 1.25e-2}) {
    const double v = grid_minimize(f, -2, 2, h, plain).value;
    EXPECT_LE(v, previous);
    previous = v;
  }
}

TEST(Grid, LipschitzPruningMatchesFullScan) {
  auto f = [](double y) { return std::abs(y * y - 2) + 0.5 * (y - 0.3) * (y - 0.3); };
  GridOptions pruned;
  pruned.lipschitz = 2 * 3 + 3.3;
  const GridResult1D a = grid_minimize(f, -3, 3, 1e-4, pruned);
  const GridResult1D b = grid_minimize(f, -3, 3, 1e-4);
  EXPECT_NEAR(a.value, b.value, 1e-9);
  EXPECT_LT(a.evaluations, b.evaluations);
}

TEST(Grid, TwoDimensional) {
  auto f = [](double s, double t) { return (s - 0.5) * (s - 0.5) + 2 * (t + 1) * (t + 1); };
  const GridResult2D r = grid_minimize(f, {-2, -2}, {2, 2}, 1e-3);
  EXPECT_NEAR(r.argmin[0], 0.5, 1e-3);
  EXPECT_NEAR(r.argmin[1], -1.0, 1e-3);
}

TEST(Generic, LinearModel) {
  const Vector g = make_vector({1.0, -2.0, 0.5});
  const Vector base = make_vector({0.3, 0.1, -1.0});
  SubproblemModel model;
  model.value = [&](const Vector& y) { return g.dot(y); };
  model.subgradient = [&](const Vector&) { return g; };
  const Vector y = generic_prox_subproblem(model, Regularizer::zero(), base, 4.0, 1e-12);
  EXPECT_LT((y - (base - g / 4.0)).norm(), 1e-6);
}

TEST(Generic, CertificateAndMonotoneTrace) {
  const ProblemInstance p = make_lad(Matrix::Identity(2, 2), make_vector({1.0, -1.0}));
  SubproblemModel model;
  model.value = [&](const Vector& y) { return objective_value(p, y); };
  model.subgradient = [&](const Vector& y) { return full_subgradient(p, y); };
  const GenericSolveResult r =
      generic_prox_subproblem_report(model, Regularizer::ball(0.5), make_vector({2.0, 2.0}), 1.0, 1e-10);
  EXPECT_LE(r.certified_gap, 1e-10);
  EXPECT_LE(r.argmin.norm(), 0.5);
  for (std::size_t i = 1; i < r.best_values.size(); ++i) EXPECT_LE(r.best_values[i], r.best_values[i - 1]);
}

TEST(Generic, RejectsNonconvex) {
  SubproblemModel model;
  model.value = [](const Vector&) { return 0.0; };
  model.subgradient = [](const Vector& y) { return Vector::Zero(y.size()); };
  model.eta = 2.0;
  try {
    generic_prox_subproblem(model, Regularizer::zero(), make_vector({1.0}), 1.0, 1e-8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::nonconvex_subproblem);
  }
}

TEST(FiniteDifference, Examples) {
  const ProblemInstance p = make_phase_retrieval(make_vector({1.0, 0.0}).transpose(), make_vector({1.0}));
  EXPECT_LE(finite_difference_check([&](const Vector& x) { return datum_loss(p, x, 0); }, make_vector({2.0, 0.0}),
                                    make_vector({4.0, 0.0}), 1e-6),
            1e-4);
  EXPECT_LE(finite_difference_check([](const Vector& x) { return std::abs(x[0]); }, make_vector({3.0}),
                                    make_vector({1.0}), 1e-3),
            1e-10);
  EXPECT_LE(finite_difference_check([](const Vector& x) { return 0.5 * x.squaredNorm(); }, make_vector({0.7, -2.0}),
                                    make_vector({0.7, -2.0}), 1e-3),
            1e-10);
}

TEST(Verify, FaultStrings) {
  for (Fault f : fault_fixtures()) EXPECT_EQ(parse_fault(to_string(f)), f);
  EXPECT_THROW(parse_fault("nonsense"), Error);
}

TEST(Verify, ClipFaultIsCaught) {
  const Pairing& pairing = find_pairing("solve_linear_model_prox");
  EXPECT_TRUE(pairing.run(closed_forms(Fault::none), 100, 7).passed);
  const OracleReport broken = pairing.run(closed_forms(Fault::clip), 100, 7);
  EXPECT_FALSE(broken.passed);
  EXPECT_GT(broken.max_abs_error, broken.tolerance);
  EXPECT_FALSE(broken.worst_instance.empty());
}

TEST(Verify, EveryFaultBreaksSomePairing) {
  for (Fault f : fault_fixtures()) {
    if (f == Fault::none) continue;
    VerifyOptions options;
    options.fault = f;
    options.scale = 0.25;
    EXPECT_FALSE(verify_all(options).passed) << to_string(f);
  }
}
