#pragma once

#include <array>
#include <vector>

namespace wcopt {

/// c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0, coefficients stored highest first.
struct QuarticPoly {
  std::array<double, 5> coeffs{};

  double operator()(double x) const noexcept;
  double derivative(double x) const noexcept;
  /// max |c_i|
  double scale() const noexcept;
};

/// Real roots with multiplicity, ascending.
///
/// Leading zero coefficients reduce the degree; trailing zeros contribute
/// exact roots at the origin. The remaining polynomial is solved through the
/// eigenvalues of its (scaled) companion matrix. Eigenvalues that cluster
/// around a real value are merged into one root of the cluster's
/// multiplicity, isolated real eigenvalues get a Newton polish, and
/// eigenvalues with imaginary part above 1e-7 (1 + |z|) are dropped.
/// Throws Errc::degenerate_polynomial when all coefficients vanish.
std::vector<double> quartic_real_roots(const QuarticPoly& p);

}  // namespace wcopt
