#include "fiberorder/error.hpp"

namespace fiberorder {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid_input";
    case ErrorKind::DuplicateLabel: return "duplicate_label";
    case ErrorKind::UnknownLabel: return "unknown_label";
    case ErrorKind::NotTransitive: return "not_transitive";
    case ErrorKind::NotAntisymmetric: return "not_antisymmetric";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::InvalidPoint: return "invalid_point";
    case ErrorKind::InvalidMeasure: return "invalid_measure";
    case ErrorKind::InvalidNetwork: return "invalid_network";
    case ErrorKind::OverlappingSets: return "overlapping_sets";
    case ErrorKind::BadBasePoint: return "bad_base_point";
    case ErrorKind::BaseMismatch: return "base_mismatch";
    case ErrorKind::NotADecomposition: return "not_a_decomposition";
    case ErrorKind::SizeOverflow: return "size_overflow";
    case ErrorKind::TooLarge: return "too_large";
    case ErrorKind::KTooLarge: return "k_too_large";
    case ErrorKind::FiberTooLarge: return "fiber_too_large";
    case ErrorKind::NotConnected: return "not_connected";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::NotInImage: return "not_in_image";
    case ErrorKind::RefinementNotFound: return "refinement_not_found";
    case ErrorKind::InternalContradiction: return "internal_contradiction";
  }
  return "unknown";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::DuplicateLabel:
    case ErrorKind::UnknownLabel:
    case ErrorKind::NotTransitive:
    case ErrorKind::NotAntisymmetric:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidPoint:
    case ErrorKind::InvalidMeasure:
    case ErrorKind::InvalidNetwork:
    case ErrorKind::OverlappingSets:
    case ErrorKind::BadBasePoint:
    case ErrorKind::BaseMismatch:
    case ErrorKind::NotADecomposition:
      return true;
    default:
      return false;
  }
}

}  // namespace fiberorder
