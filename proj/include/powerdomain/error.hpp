#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace powerdomain {

enum class ErrorKind {
  // structural axioms of input data
  NotAPreorder,
  NotATopology,
  NotContinuous,
  NotClosed,
  NotOpen,
  NotAValidFunctional,
  NotClosedFamily,
  NotStrict,
  NotMonotone,
  NotModular,
  NotLowerSemicontinuous,
  NotAKernel,
  NotNormalized,
  // operation preconditions
  ShapeMismatch,
  PreconditionFailed,
  InfinityIndeterminate,
  InfiniteMass,
  OrderNotClosed,
  NotAnHAlgebra,
  TooManyPoints,
  UnknownSuite,
  NotAFailure,
  // an internal cross-check disagreed; always a bug or a falsified theorem
  NegativeWeight,
  Anomaly,
};

inline constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAPreorder: return "NotAPreorder";
    case ErrorKind::NotATopology: return "NotATopology";
    case ErrorKind::NotContinuous: return "NotContinuous";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::NotAValidFunctional: return "NotAValidFunctional";
    case ErrorKind::NotClosedFamily: return "NotClosedFamily";
    case ErrorKind::NotStrict: return "NotStrict";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::NotModular: return "NotModular";
    case ErrorKind::NotLowerSemicontinuous: return "NotLowerSemicontinuous";
    case ErrorKind::NotAKernel: return "NotAKernel";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::InfinityIndeterminate: return "InfinityIndeterminate";
    case ErrorKind::InfiniteMass: return "InfiniteMass";
    case ErrorKind::OrderNotClosed: return "OrderNotClosed";
    case ErrorKind::NotAnHAlgebra: return "NotAnHAlgebra";
    case ErrorKind::TooManyPoints: return "TooManyPoints";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::NotAFailure: return "NotAFailure";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::Anomaly: return "Anomaly";
  }
  return "Unknown";
}

/// Axiom violations in user-supplied data (as opposed to violated operation
/// preconditions or internal anomalies).
inline constexpr bool is_axiom_violation(ErrorKind k) {
  return k <= ErrorKind::NotNormalized;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string witness)
      : std::runtime_error(std::string(to_string(kind)) + ": " + witness),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string witness) {
  throw Error(kind, std::move(witness));
}

}  // namespace powerdomain
