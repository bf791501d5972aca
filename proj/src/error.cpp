#include "reclab/error.hpp"

namespace reclab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonStochastic: return "NonStochastic";
    case ErrorCode::ForbiddenMove: return "ForbiddenMove";
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotSummable: return "NotSummable";
    case ErrorCode::NonPositiveDrift: return "NonPositiveDrift";
    case ErrorCode::NoCertificate: return "NoCertificate";
    case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::ZeroParentProbability: return "ZeroParentProbability";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::TooManyGenerators: return "TooManyGenerators";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& message, const std::vector<Issue>& issues) {
  std::string out = std::string(to_string(code)) + ": " + message;
  for (const auto& issue : issues) {
    out += "\n  [" + std::string(to_string(issue.code)) + "] " + issue.where + ": " + issue.message;
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(compose(code, message, {})), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::vector<Issue> issues)
    : std::runtime_error(compose(code, message, issues)), code_(code), issues_(std::move(issues)) {}

}  // namespace reclab
