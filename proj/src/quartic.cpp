#include "wcopt/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "wcopt/error.hpp"

namespace wcopt {

namespace {

// Horner evaluation of a polynomial stored highest degree first.
template <typename T>
T horner(const std::vector<double>& c, T x) {
  T acc = c.front();
  for (std::size_t i = 1; i < c.size(); ++i) acc = acc * x + c[i];
  return acc;
}

double horner_derivative(const std::vector<double>& c, double x) {
  const std::size_t n = c.size() - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc = acc * x + c[i] * static_cast<double>(n - i);
  return acc;
}

double polish(const std::vector<double>& c, double x) {
  double residual = std::abs(horner(c, x));
  for (int iter = 0; iter < 3 && residual > 0.0; ++iter) {
    const double slope = horner_derivative(c, x);
    if (slope == 0.0 || !std::isfinite(slope)) break;
    const double candidate = x - horner(c, x) / slope;
    const double candidate_residual = std::abs(horner(c, candidate));
    if (!(candidate_residual < residual)) break;
    x = candidate;
    residual = candidate_residual;
  }
  return x;
}

bool nearly_real(std::complex<double> z) {
  return std::abs(z.imag()) <= 1e-7 * (1.0 + std::abs(z));
}

// Roots of a polynomial of degree >= 2 with nonzero constant term.
void companion_roots(const std::vector<double>& c, std::vector<double>& out) {
  const auto n = static_cast<Eigen::Index>(c.size() - 1);
  // Monic coefficients, then rescale x = s z so the roots are O(1).
  std::vector<double> monic(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) monic[i] = c[i] / c[0];
  double s = 0.0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    s = std::max(s, std::pow(std::abs(monic[i]), 1.0 / static_cast<double>(i)));
  }
  if (!(s > 0.0) || !std::isfinite(s)) s = 1.0;

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    companion(0, i) = -monic[i + 1] / std::pow(s, static_cast<double>(i + 1));
  }
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::degenerate_polynomial, "quartic_real_roots: eigenvalue solve failed");
  }
  std::vector<std::complex<double>> eig(solver.eigenvalues().begin(),
                                        solver.eigenvalues().end());

  // Clusters of nearby eigenvalues (scaled space): a multiple root splits
  // into a ring of radius ~ eps^(1/k).
  const std::size_t count = eig.size();
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double radius = 1e-3 * (1.0 + std::max(std::abs(eig[i]), std::abs(eig[j])));
      if (std::abs(eig[i] - eig[j]) <= radius) parent[find(i)] = find(j);
    }
  }

  std::vector<bool> done(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = i; j < count; ++j) {
      if (find(j) == find(i)) members.push_back(j);
    }
    for (std::size_t j : members) done[j] = true;

    const bool all_real = std::all_of(members.begin(), members.end(),
                                      [&](std::size_t j) { return nearly_real(eig[j]); });
    if (all_real) {
      for (std::size_t j : members) out.push_back(polish(c, s * eig[j].real()));
      continue;
    }
    std::complex<double> centroid = 0.0;
    for (std::size_t j : members) centroid += eig[j];
    centroid /= static_cast<double>(members.size());
    if (!nearly_real(centroid)) continue;
    // Only a conjugate ring around a genuine real root is merged; an
    // isolated complex pair leaves a visible residual at its centroid.
    const double root = s * centroid.real();
    double coeff_scale = 0.0;
    for (double ci : c) coeff_scale = std::max(coeff_scale, std::abs(ci));
    if (std::abs(horner(c, root)) <= 1e-8 * (1.0 + coeff_scale)) {
      out.insert(out.end(), members.size(), root);
    }
  }
}

}  // namespace

double QuarticPoly::operator()(double x) const noexcept {
  double acc = coeffs[0];
  for (std::size_t i = 1; i < coeffs.size(); ++i) acc = acc * x + coeffs[i];
  return acc;
}

double QuarticPoly::derivative(double x) const noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) acc = acc * x + coeffs[i] * static_cast<double>(4 - i);
  return acc;
}

double QuarticPoly::scale() const noexcept {
  double s = 0.0;
  for (double c : coeffs) s = std::max(s, std::abs(c));
  return s;
}

std::vector<double> quartic_real_roots(const QuarticPoly& p) {
  for (double c : p.coeffs) {
    if (!std::isfinite(c)) throw Error(Errc::invalid_argument, "quartic_real_roots: non-finite coefficient");
  }
  auto first = std::find_if(p.coeffs.begin(), p.coeffs.end(), [](double c) { return c != 0.0; });
  if (first == p.coeffs.end()) {
    throw Error(Errc::degenerate_polynomial, "quartic_real_roots: all coefficients are zero");
  }
  std::vector<double> c(first, p.coeffs.end());
  std::vector<double> roots;
  while (c.size() > 1 && c.back() == 0.0) {
    roots.push_back(0.0);
    c.pop_back();
  }
  if (c.size() == 2) {
    roots.push_back(-c[1] / c[0]);
  } else if (c.size() > 2) {
    companion_roots(c, roots);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace wcopt
