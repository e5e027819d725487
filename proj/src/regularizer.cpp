#include "wcopt/regularizer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wcopt/error.hpp"

namespace wcopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string_view to_string(RegularizerKind kind) {
  switch (kind) {
    case RegularizerKind::zero: return "zero";
    case RegularizerKind::ball: return "ball";
    case RegularizerKind::box: return "box";
    case RegularizerKind::l1: return "l1";
    case RegularizerKind::squared_l2: return "squared-l2";
  }
  return "zero";
}

RegularizerKind parse_regularizer_kind(std::string_view tag) {
  if (tag == "zero") return RegularizerKind::zero;
  if (tag == "ball") return RegularizerKind::ball;
  if (tag == "box") return RegularizerKind::box;
  if (tag == "l1") return RegularizerKind::l1;
  if (tag == "squared-l2") return RegularizerKind::squared_l2;
  throw Error(Errc::invalid_argument,
              "unknown regularizer kind '" + std::string(tag) +
                  "' (expected zero, ball, box, l1 or squared-l2)");
}

Regularizer Regularizer::zero() { return Regularizer{}; }

Regularizer Regularizer::ball(double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw Error(Errc::invalid_argument, "ball regularizer: radius must be finite and >= 0");
  }
  Regularizer r;
  r.kind_ = RegularizerKind::ball;
  r.radius_ = radius;
  return r;
}

Regularizer Regularizer::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size()) {
    throw Error(Errc::dimension_mismatch, "box regularizer: lower and upper differ in size");
  }
  for (Index i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i] ||
        lower[i] == kInf || upper[i] == -kInf) {
      throw Error(Errc::invalid_argument,
                  "box regularizer: need lower <= upper at coordinate " + std::to_string(i));
    }
  }
  Regularizer r;
  r.kind_ = RegularizerKind::box;
  r.lower_ = std::move(lower);
  r.upper_ = std::move(upper);
  return r;
}

Regularizer Regularizer::l1(double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw Error(Errc::invalid_argument, "l1 regularizer: weight must be finite and >= 0");
  }
  Regularizer r;
  r.kind_ = RegularizerKind::l1;
  r.weight_ = weight;
  return r;
}

Regularizer Regularizer::squared_l2(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw Error(Errc::invalid_argument, "squared-l2 regularizer: mu must be finite and >= 0");
  }
  Regularizer r;
  r.kind_ = RegularizerKind::squared_l2;
  r.weight_ = mu;
  return r;
}

void Regularizer::check_dimension(const Vector& x) const {
  if (kind_ == RegularizerKind::box) ensure_dimension(x, lower_.size(), "box regularizer");
}

bool Regularizer::feasible(const Vector& x) const {
  check_dimension(x);
  switch (kind_) {
    case RegularizerKind::ball: return x.norm() <= radius_;
    case RegularizerKind::box:
      return ((x.array() >= lower_.array()) && (x.array() <= upper_.array())).all();
    default: return true;
  }
}

double Regularizer::value(const Vector& x) const {
  check_dimension(x);
  switch (kind_) {
    case RegularizerKind::zero: return 0.0;
    case RegularizerKind::ball:
    case RegularizerKind::box: return feasible(x) ? 0.0 : kInf;
    case RegularizerKind::l1: return weight_ * x.lpNorm<1>();
    case RegularizerKind::squared_l2: return 0.5 * weight_ * x.squaredNorm();
  }
  return 0.0;
}

Vector Regularizer::project(const Vector& x) const {
  check_dimension(x);
  switch (kind_) {
    case RegularizerKind::ball: {
      const double norm = x.norm();
      if (norm <= radius_) return x;
      Vector y = x * (radius_ / norm);
      // rounding can leave |y| a few ulps above the radius
      while (y.norm() > radius_) y *= 1.0 - std::numeric_limits<double>::epsilon();
      return y;
    }
    case RegularizerKind::box: return x.cwiseMax(lower_).cwiseMin(upper_);
    default: return x;
  }
}

Vector Regularizer::prox(const Vector& x, double step) const {
  if (!(step > 0.0)) throw Error(Errc::nonpositive_step, "prox: step must be positive");
  check_dimension(x);
  switch (kind_) {
    case RegularizerKind::zero: return x;
    case RegularizerKind::ball:
    case RegularizerKind::box: return project(x);
    case RegularizerKind::l1: {
      const double t = step * weight_;
      return x.unaryExpr([t](double v) {
        if (v > t) return v - t;
        if (v < -t) return v + t;
        return 0.0;
      });
    }
    case RegularizerKind::squared_l2: return x / (1.0 + step * weight_);
  }
  return x;
}

Vector Regularizer::subgradient(const Vector& x) const {
  check_dimension(x);
  switch (kind_) {
    case RegularizerKind::l1:
      return x.unaryExpr([w = weight_](double v) { return v > 0 ? w : (v < 0 ? -w : 0.0); });
    case RegularizerKind::squared_l2: return weight_ * x;
    default: return Vector::Zero(x.size());
  }
}

bool operator==(const Regularizer& a, const Regularizer& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case RegularizerKind::zero: return true;
    case RegularizerKind::ball: return a.radius_ == b.radius_;
    case RegularizerKind::box: return a.lower_ == b.lower_ && a.upper_ == b.upper_;
    case RegularizerKind::l1:
    case RegularizerKind::squared_l2: return a.weight_ == b.weight_;
  }
  return false;
}

double reg_value(const Regularizer& r, const Vector& x) { return r.value(x); }

Vector prox(const Regularizer& r, const Vector& x, double step) { return r.prox(x, step); }

}  // namespace wcopt
