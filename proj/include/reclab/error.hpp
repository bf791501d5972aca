#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reclab {

enum class ErrorCode {
  NonStochastic,
  ForbiddenMove,
  NegativeProbability,
  ShapeMismatch,
  UnknownName,
  InvalidArgument,
  ParseError,
  PreconditionFailed,
  NotSummable,
  NonPositiveDrift,
  NoCertificate,
  DeltaOutOfRange,
  ZeroParentProbability,
  OrderViolation,
  TooManyGenerators,
};

std::string_view to_string(ErrorCode code);

/// One violated invariant. Validation collects all of them before throwing.
struct Issue {
  ErrorCode code;
  std::string where;
  std::string message;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::vector<Issue> issues);

  ErrorCode code() const noexcept { return code_; }
  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  ErrorCode code_;
  std::vector<Issue> issues_;
};

}  // namespace reclab
