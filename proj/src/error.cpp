#include "stablam/error.hpp"

namespace stablam {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonCritical: return "NonCritical";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::Mu1Nonzero: return "Mu1Nonzero";
    case ErrorKind::NotInternal: return "NotInternal";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::UnreachableLeafCount: return "UnreachableLeafCount";
    case ErrorKind::RetryBudgetExhausted: return "RetryBudgetExhausted";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::BadTheta: return "BadTheta";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ExcursionNotClosed: return "ExcursionNotClosed";
    case ErrorKind::BadEps: return "BadEps";
    case ErrorKind::MissingJumps: return "MissingJumps";
    case ErrorKind::SourceMismatch: return "SourceMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DegenerateWindow: return "DegenerateWindow";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace stablam
