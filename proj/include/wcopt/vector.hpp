#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace wcopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Throws Errc::invalid_argument if any entry is NaN or infinite.
void ensure_finite(const Vector& x, std::string_view what);

/// Throws Errc::dimension_mismatch unless `x.size() == expected`.
void ensure_dimension(const Vector& x, Index expected, std::string_view what);

/// Checked construction from a list of entries.
Vector make_vector(std::initializer_list<double> entries);

/// Concatenation (x, y).
Vector concat(const Vector& x, const Vector& y);

}  // namespace wcopt
