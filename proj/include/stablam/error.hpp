#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stablam {

enum class ErrorKind {
  InvalidArgument,
  NonCritical,
  NegativeWeight,
  Mu1Nonzero,
  NotInternal,
  Overflow,
  UnreachableLeafCount,
  RetryBudgetExhausted,
  TooLarge,
  InvalidPath,
  BadTheta,
  BudgetExceeded,
  ExcursionNotClosed,
  BadEps,
  MissingJumps,
  SourceMismatch,
  EmptyInput,
  DegenerateWindow,
  BadInput,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (tests, the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stablam
