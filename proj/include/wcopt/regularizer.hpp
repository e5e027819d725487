#pragma once

#include <string_view>

#include "wcopt/vector.hpp"

namespace wcopt {

enum class RegularizerKind { zero, ball, box, l1, squared_l2 };

std::string_view to_string(RegularizerKind kind);
RegularizerKind parse_regularizer_kind(std::string_view tag);

/// A closed convex function with an exact proximal map.
///
///   zero        r = 0
///   ball        indicator of { x : |x|_2 <= radius }
///   box         indicator of { x : lower <= x <= upper }, +-inf allowed
///   l1          r = weight * |x|_1
///   squared_l2  r = (mu / 2) |x|_2^2
///
/// Immutable after construction.
class Regularizer {
 public:
  Regularizer() = default;

  static Regularizer zero();
  static Regularizer ball(double radius);
  static Regularizer box(Vector lower, Vector upper);
  static Regularizer l1(double weight);
  static Regularizer squared_l2(double mu);

  RegularizerKind kind() const noexcept { return kind_; }
  double radius() const noexcept { return radius_; }
  double weight() const noexcept { return weight_; }
  const Vector& lower() const noexcept { return lower_; }
  const Vector& upper() const noexcept { return upper_; }

  bool is_indicator() const noexcept {
    return kind_ == RegularizerKind::ball || kind_ == RegularizerKind::box;
  }
  /// Strong convexity modulus (mu for squared_l2, 0 otherwise).
  double strong_convexity() const noexcept {
    return kind_ == RegularizerKind::squared_l2 ? weight_ : 0.0;
  }

  /// Exact value; +inf outside the set for indicator kinds.
  double value(const Vector& x) const;
  /// prox_{step r}(x) = argmin_y r(y) + |y - x|^2 / (2 step). step > 0.
  Vector prox(const Vector& x, double step) const;
  /// Nearest feasible point (identity for non-indicator kinds).
  Vector project(const Vector& x) const;
  bool feasible(const Vector& x) const;
  /// Some element of the subdifferential at a feasible x (0 from the normal
  /// cone for indicators, sign(x) with sign(0) = 0 for l1).
  Vector subgradient(const Vector& x) const;

  friend bool operator==(const Regularizer& a, const Regularizer& b);

 private:
  void check_dimension(const Vector& x) const;

  RegularizerKind kind_ = RegularizerKind::zero;
  double radius_ = 0.0;
  double weight_ = 0.0;
  Vector lower_;
  Vector upper_;
};

double reg_value(const Regularizer& r, const Vector& x);
Vector prox(const Regularizer& r, const Vector& x, double step);

}  // namespace wcopt
