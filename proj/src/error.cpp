#include "wcopt/error.hpp"

namespace wcopt {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_dimension: return "invalid-dimension";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::degenerate_polynomial: return "degenerate-polynomial";
    case Errc::nonpositive_step: return "nonpositive-step";
    case Errc::nonconvex_subproblem: return "nonconvex-subproblem";
    case Errc::unsupported_combination: return "unsupported-combination";
    case Errc::diverged_run: return "diverged-run";
    case Errc::envelope_parameter: return "envelope-parameter";
    case Errc::tolerance_not_met: return "tolerance-not-met";
    case Errc::empty_trajectory: return "empty-trajectory";
    case Errc::trajectory_not_retained: return "trajectory-not-retained";
    case Errc::config_error: return "config-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace wcopt
