#include "saten/error.h"

namespace saten {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSyntax: return "SyntaxError";
    case ErrorKind::kReservedName: return "ReservedNameError";
    case ErrorKind::kCase: return "CaseError";
    case ErrorKind::kWhitespace: return "WhitespaceError";
    case ErrorKind::kFreeVariable: return "FreeVariableError";
    case ErrorKind::kFileParse: return "ParseError";
    case ErrorKind::kDomain: return "DomainError";
    case ErrorKind::kDuplicateBelief: return "DuplicateBelief";
    case ErrorKind::kInconsistentInput: return "InconsistentInput";
    case ErrorKind::kContradictoryInput: return "ContradictoryInput";
    case ErrorKind::kProtectedInconsistent: return "ProtectedInconsistent";
    case ErrorKind::kNotHorn: return "NotHorn";
    case ErrorKind::kConfig: return "ConfigError";
    case ErrorKind::kStaleOutcome: return "StaleOutcome";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kProverUnknown: return "ProverUnknown";
    case ErrorKind::kNotFound: return "NotFound";
  }
  return "Error";
}

}  // namespace saten
