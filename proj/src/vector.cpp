#include "wcopt/vector.hpp"

#include <string>

#include "wcopt/error.hpp"

namespace wcopt {

void ensure_finite(const Vector& x, std::string_view what) {
  if (!x.allFinite()) {
    throw Error(Errc::invalid_argument, std::string(what) + ": non-finite entry");
  }
}

void ensure_dimension(const Vector& x, Index expected, std::string_view what) {
  if (x.size() != expected) {
    throw Error(Errc::dimension_mismatch,
                std::string(what) + ": expected dimension " + std::to_string(expected) +
                    ", got " + std::to_string(x.size()));
  }
}

Vector make_vector(std::initializer_list<double> entries) {
  Vector x(static_cast<Index>(entries.size()));
  Index i = 0;
  for (double e : entries) x[i++] = e;
  ensure_finite(x, "make_vector");
  return x;
}

Vector concat(const Vector& x, const Vector& y) {
  Vector z(x.size() + y.size());
  z << x, y;
  return z;
}

}  // namespace wcopt
