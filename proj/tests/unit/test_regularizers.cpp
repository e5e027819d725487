#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "wcopt/error.hpp"
#include "wcopt/regularizer.hpp"
#include "wcopt/rng.hpp"

using namespace wcopt;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// make_vector rejects infinite entries
Vector bounds(std::initializer_list<double> entries) {
  Vector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (double e : entries) v[i++] = e;
  return v;
}

std::vector<Regularizer> convex_kinds() {
  return {Regularizer::zero(), Regularizer::ball(1.0), Regularizer::l1(0.7), Regularizer::squared_l2(1.3),
          Regularizer::box(bounds({-1.0, -kInf, 0.0}), bounds({0.5, 2.0, kInf}))};
}
}  // namespace

TEST(Regularizer, Values) {
  EXPECT_EQ(reg_value(Regularizer::ball(1.0), make_vector({0.5, 0.0})), 0.0);
  EXPECT_EQ(reg_value(Regularizer::ball(1.0), make_vector({3.0, 4.0})), kInf);
  EXPECT_EQ(reg_value(Regularizer::l1(2.0), make_vector({1.0, -1.0})), 4.0);
  EXPECT_EQ(reg_value(Regularizer::squared_l2(2.0), make_vector({1.0, 2.0})), 5.0);
  EXPECT_EQ(reg_value(Regularizer::zero(), make_vector({1e9})), 0.0);
}

TEST(Regularizer, Prox) {
  const Vector x = make_vector({3.0, 4.0});
  EXPECT_EQ(prox(Regularizer::zero(), x, 7.0), x);
  const Vector p = prox(Regularizer::ball(1.0), x, 1.0);
  EXPECT_NEAR(p[0], 0.6, 1e-15);
  EXPECT_NEAR(p[1], 0.8, 1e-15);
  EXPECT_LE(p.norm(), 1.0);
  EXPECT_DOUBLE_EQ(prox(Regularizer::l1(1.0), make_vector({1.5}), 1.0)[0], 0.5);
  EXPECT_DOUBLE_EQ(prox(Regularizer::l1(1.0), make_vector({-0.5}), 1.0)[0], 0.0);
  EXPECT_DOUBLE_EQ(prox(Regularizer::squared_l2(1.0), make_vector({3.0}), 2.0)[0], 1.0);
}

TEST(Regularizer, BoxWithInfiniteBounds) {
  const Regularizer box = Regularizer::box(bounds({-1.0, -kInf}), bounds({1.0, kInf}));
  const Vector p = prox(box, make_vector({5.0, -1e6}), 1.0);
  EXPECT_EQ(p, make_vector({1.0, -1e6}));
  EXPECT_EQ(reg_value(box, bounds({0.0, 1e300})), 0.0);
}

TEST(Regularizer, ConstructionErrors) {
  EXPECT_THROW(Regularizer::ball(-1.0), Error);
  EXPECT_THROW(Regularizer::l1(std::nan("")), Error);
  EXPECT_THROW(Regularizer::box(make_vector({1.0}), make_vector({0.0})), Error);
  EXPECT_THROW(Regularizer::box(make_vector({1.0}), make_vector({2.0, 3.0})), Error);
  try {
    prox(Regularizer::l1(1.0), make_vector({1.0}), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::nonpositive_step);
  }
}

TEST(Regularizer, KindStrings) {
  for (const char* tag : {"zero", "ball", "box", "l1", "squared-l2"}) {
    EXPECT_EQ(to_string(parse_regularizer_kind(tag)), tag);
  }
  EXPECT_THROW(parse_regularizer_kind("elastic"), Error);
}

TEST(Regularizer, Nonexpansive) {
  RngStream rng(21, 0);
  for (const Regularizer& r : convex_kinds()) {
    for (int k = 0; k < 1000; ++k) {
      const Vector x = 2.0 * gaussian_vector(rng, 3);
      const Vector y = 2.0 * gaussian_vector(rng, 3);
      const double step = 0.1 + rng.uniform();
      EXPECT_LE((prox(r, x, step) - prox(r, y, step)).norm(), (x - y).norm() + 1e-12);
    }
  }
}

TEST(Regularizer, ProxBeatsRandomCandidates) {
  RngStream rng(22, 0);
  for (const Regularizer& r : convex_kinds()) {
    const Vector x = 2.0 * gaussian_vector(rng, 3);
    const double step = 0.2 + rng.uniform();
    auto f = [&](const Vector& y) { return reg_value(r, y) + (y - x).squaredNorm() / (2.0 * step); };
    const Vector p = prox(r, x, step);
    const double best = f(p);
    ASSERT_TRUE(std::isfinite(best));
    for (int k = 0; k < 1000; ++k) {
      const Vector y = p + 0.3 * gaussian_vector(rng, 3);
      EXPECT_LE(best, f(y) + 1e-10);
    }
  }
}
