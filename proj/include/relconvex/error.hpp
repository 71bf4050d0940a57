#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relconvex {

enum class ErrorKind {
  InvalidValue,
  LengthError,
  LengthMismatch,
  WitnessNotIncreasing,
  ShapeError,
  SignError,
  MonotoneError,
  IntervalError,
  OutOfDomain,
  ZeroTotalWeight,
  DegenerateWitness,
  PreconditionViolation,
  IndexOutOfRange,
  NotStrictlyIncreasing,
  InfeasibleShape,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::LengthError: return "LengthError";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::WitnessNotIncreasing: return "WitnessNotIncreasing";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::SignError: return "SignError";
    case ErrorKind::MonotoneError: return "MonotoneError";
    case ErrorKind::IntervalError: return "IntervalError";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::ZeroTotalWeight: return "ZeroTotalWeight";
    case ErrorKind::DegenerateWitness: return "DegenerateWitness";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorKind::InfeasibleShape: return "InfeasibleShape";
  }
  return "Unknown";
}

/// Thrown by every checked operation. `index()` is the 1-based position that
/// triggered the failure, when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace relconvex
