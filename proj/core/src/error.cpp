#include "fredsim/error.hpp"

namespace fredsim {

std::string_view kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config: return "config";
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::dimension_cap: return "dimension_cap";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::shape_mismatch: return "shape_mismatch";
    case ErrorKind::singular_drive: return "singular_drive";
    case ErrorKind::degenerate_normal_mode: return "degenerate_normal_mode";
    case ErrorKind::degenerate_branch: return "degenerate_branch";
    case ErrorKind::orthogonal_postselection: return "orthogonal_postselection";
    case ErrorKind::vanishing_branch: return "vanishing_branch";
    case ErrorKind::vanishing_photon_number: return "vanishing_photon_number";
    case ErrorKind::cutoff: return "cutoff";
    case ErrorKind::instability: return "instability";
    case ErrorKind::degenerate_steady_state: return "degenerate_steady_state";
    case ErrorKind::non_psd: return "non_psd";
  }
  return "unknown";
}

ErrorClass error_class(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config:
      return ErrorClass::parse;
    case ErrorKind::instability:
    case ErrorKind::degenerate_steady_state:
    case ErrorKind::non_psd:
    case ErrorKind::cutoff:
      return ErrorClass::numerical;
    default:
      return ErrorClass::physics;
  }
}

void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace fredsim
