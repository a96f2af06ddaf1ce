#ifndef SATEN_ERROR_H_
#define SATEN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace saten {

// Machine-readable error categories. The CLI and the HTTP service map these
// onto exit codes and status codes respectively.
enum class ErrorKind {
  kSyntax,
  kReservedName,
  kCase,
  kWhitespace,
  kFreeVariable,
  kFileParse,
  kDomain,
  kDuplicateBelief,
  kInconsistentInput,
  kContradictoryInput,
  kProtectedInconsistent,
  kNotHorn,
  kConfig,
  kStaleOutcome,
  kBudgetExceeded,
  kProverUnknown,
  kNotFound,
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse errors additionally carry the byte offset (formulae) or the 1-based
// line number (ranking files) where they were detected.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t position)
      : Error(kind, message), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace saten

#endif  // SATEN_ERROR_H_
