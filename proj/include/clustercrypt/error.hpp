#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace clustercrypt {

enum class ErrorCode {
  NonInvertible,
  InvalidDegree,
  OutOfRange,
  InvalidParams,
  InvalidMatrix,
  InvalidSpec,
  InvalidVertex,
  InvalidInput,
  DivisionByZero,
  NotDivisible,
  DegenerateSubstitution,
  DenominatorVanishes,
  NotClusterShaped,
  ZeroMessage,
  UnknownSymbol,
  Infeasible,
  InvalidKey,
  EncryptionFailed,
  DecryptionFailed,
  CorruptOrWrongKey,
  ParseError,
  BudgetExceeded,
  NotFiniteType,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::DegenerateSubstitution: return "DegenerateSubstitution";
    case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorCode::NotClusterShaped: return "NotClusterShaped";
    case ErrorCode::ZeroMessage: return "ZeroMessage";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::InvalidKey: return "InvalidKey";
    case ErrorCode::EncryptionFailed: return "EncryptionFailed";
    case ErrorCode::DecryptionFailed: return "DecryptionFailed";
    case ErrorCode::CorruptOrWrongKey: return "CorruptOrWrongKey";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotFiniteType: return "NotFiniteType";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when an exchange relation would divide by zero. Records which vertex
/// was being mutated and the 0-based index of the step within its sequence.
class MutationError : public Error {
 public:
  MutationError(ErrorCode code, int vertex, int step, const std::string& what)
      : Error(code, what + " (vertex " + std::to_string(vertex) + ", step " +
                        std::to_string(step) + ")"),
        vertex_(vertex),
        step_(step) {}

  int vertex() const noexcept { return vertex_; }
  int step() const noexcept { return step_; }

 private:
  int vertex_;
  int step_;
};

/// Malformed serialized input. `position` is a byte offset for syntax errors
/// and a JSON pointer for schema errors.
class ParseError : public Error {
 public:
  ParseError(std::string position, const std::string& what)
      : Error(ErrorCode::ParseError, "at " + position + ": " + what),
        position_(std::move(position)),
        message_(what) {}

  const std::string& position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string position_;
  std::string message_;
};

}  // namespace clustercrypt
