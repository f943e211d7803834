#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netfuncap {

enum class ErrorKind {
  // network model
  CyclicGraph,
  UnreachableReceiver,
  SourcelessLeaf,
  ReceiverIsSource,
  UnknownNode,
  InvalidNetwork,
  // target functions
  OutOfAlphabet,
  InvalidFunction,
  ArityMismatch,
  NonPrimeFieldForLinear,
  // bounds
  NotSymmetric,
  NotDivisible,
  NotAllSources,
  // codes
  NotTree,
  RateInfeasible,
  OddK,
  BlockTooSmall,
  IncompatibleEmbedding,
  InvalidCode,
  // sumset
  DomainError,
  PreconditionViolated,
  // shared
  BudgetExceeded,
  ParseError,
  ValidationError,
  UnknownExample,
  InternalError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace netfuncap
