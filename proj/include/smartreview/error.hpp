#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smartreview {

enum class ErrorCode {
  InvalidArgument,
  InvalidKind,
  DuplicateKey,
  UnknownEntity,
  InvalidSubjectKind,
  UnknownStatement,
  UnregisteredUser,
  UnknownArticle,
  UnknownSection,
  InvalidPosition,
  UnknownDeoType,
  DanglingReference,
  UnknownComparison,
  UndeclaredRowOrColumn,
  DuplicateProperty,
  SyntaxError,
  UnsupportedFeature,
  UnknownPrefix,
  UnknownScopeTarget,
  ParseError,
  UnknownUriBase,
  UnknownVersion,
  EmptyArticle,
  UnknownTarget,
  InvalidName,
  UnknownToken,
  Unauthorized,
  RateLimited,
  IoError,
};

std::string_view errorCodeName(ErrorCode code);

// Every failure surfaced by the library is an Error carrying a code, so the
// HTTP layer and the CLI can map it to a status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Errors that point at a location in some input (query text, N-Triples line).
class LocatedError : public Error {
 public:
  LocatedError(ErrorCode code, const std::string& message, std::size_t location)
      : Error(code, message), location_(location) {}

  std::size_t location() const { return location_; }

 private:
  std::size_t location_;
};

}  // namespace smartreview
