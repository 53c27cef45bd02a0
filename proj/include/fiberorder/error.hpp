#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fiberorder {

enum class ErrorKind {
  // Malformed or precondition-violating input.
  InvalidInput,
  DuplicateLabel,
  UnknownLabel,
  NotTransitive,
  NotAntisymmetric,
  DimensionMismatch,
  InvalidPoint,
  InvalidMeasure,
  InvalidNetwork,
  OverlappingSets,
  BadBasePoint,
  BaseMismatch,
  NotADecomposition,
  // Domain outcomes.
  SizeOverflow,
  TooLarge,
  KTooLarge,
  FiberTooLarge,
  NotConnected,
  Infeasible,
  NotInImage,
  RefinementNotFound,
  InternalContradiction,
};

/// Stable snake_case name used in machine-readable error output.
std::string_view error_name(ErrorKind kind);

/// True for kinds that describe malformed input rather than a domain outcome.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A strict Hall-type inequality fails for `violated`. Kind is Infeasible
/// or NotInImage.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::uint32_t violated, const std::string& message,
                  ErrorKind kind = ErrorKind::Infeasible)
      : Error(kind, message), violated_(violated) {}

  /// Bitmask of the violated subset (bit i-1 set for element i).
  std::uint32_t violated() const noexcept { return violated_; }

 private:
  std::uint32_t violated_;
};

}  // namespace fiberorder
