#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wcopt/oracle.hpp"
#include "wcopt/problem.hpp"
#include "wcopt/quartic.hpp"

namespace wcopt {

/// The closed forms under verification, called through this table so a
/// fixture can substitute a deliberately broken version of one of them.
struct ClosedForms {
  std::function<Vector(double, const Vector&)> solve_linear_model_prox;
  std::function<Vector(const ProblemInstance&, const Vector&, Index, double)> proxlinear_step_phase;
  std::function<Vector(const ProblemInstance&, const Vector&, Index, double)> proxlinear_step_blind;
  std::function<Vector(const ProblemInstance&, const Vector&, Index, double)> proxpoint_step_phase;
  std::function<Vector(const ProblemInstance&, const Vector&, Index, double)> proxpoint_step_blind;
  std::function<std::vector<StepCandidate>(const ProblemInstance&, const Vector&, Index, double)>
      proxpoint_candidates_blind;
  std::function<std::vector<double>(const QuarticPoly&)> quartic_real_roots;
  std::function<Vector(const ProblemInstance&, const Vector&, Index, double, const Regularizer&)>
      cvar_model_step;
  std::function<SubgradientSample(const ProblemInstance&, const Vector&, Index)> stochastic_subgradient;
  std::function<Vector(const Regularizer&, const Vector&, double)> regularizer_prox;
};

/// Fault-injection fixtures; each breaks one entry of the table.
enum class Fault {
  none,
  clip,               // clip interval dropped from solve_linear_model_prox
  proxlinear_phase,   // factor 2 dropped from the phase Jacobian
  proxlinear_blind,   // Jacobian blocks swapped
  phase_candidate,    // first-family '+' candidate not enumerated
  blind_candidate,    // boundary candidates not enumerated
  quartic,            // largest real root dropped
  cvar,               // hinge always treated as inactive
  subgradient,        // sign of the selection flipped
  regularizer_prox,   // l1 threshold doubled
};

std::vector<Fault> fault_fixtures();
std::string_view to_string(Fault fault);
Fault parse_fault(std::string_view tag);

/// The library implementations with `fault` applied.
ClosedForms closed_forms(Fault fault = Fault::none);

struct Pairing {
  std::string name;
  std::size_t default_count = 0;
  std::function<OracleReport(const ClosedForms&, std::size_t count, std::uint64_t seed)> run;
};

/// Every closed form paired with its brute-force oracle, in a fixed order.
const std::vector<Pairing>& registered_pairings();
/// Looks up a pairing by name; throws Errc::invalid_argument.
const Pairing& find_pairing(std::string_view name);

struct VerifyOptions {
  Fault fault = Fault::none;
  /// Multiplies every default instance count (at least one instance each).
  double scale = 1.0;
  std::uint64_t seed = 7;
  /// Called after each report.
  std::function<void(const OracleReport&)> progress;
};

struct VerifySummary {
  std::vector<OracleReport> reports;
  bool passed = true;
};

VerifySummary verify_all(const VerifyOptions& options = {});

/// One line per report and a closing PASS/FAIL line.
void write_verify_summary(std::ostream& out, const VerifySummary& summary);

}  // namespace wcopt
