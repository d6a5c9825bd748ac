#include "smartreview/error.hpp"

namespace smartreview {

std::string_view errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::InvalidKind:
      return "InvalidKind";
    case ErrorCode::DuplicateKey:
      return "DuplicateKey";
    case ErrorCode::UnknownEntity:
      return "UnknownEntity";
    case ErrorCode::InvalidSubjectKind:
      return "InvalidSubjectKind";
    case ErrorCode::UnknownStatement:
      return "UnknownStatement";
    case ErrorCode::UnregisteredUser:
      return "UnregisteredUser";
    case ErrorCode::UnknownArticle:
      return "UnknownArticle";
    case ErrorCode::UnknownSection:
      return "UnknownSection";
    case ErrorCode::InvalidPosition:
      return "InvalidPosition";
    case ErrorCode::UnknownDeoType:
      return "UnknownDeoType";
    case ErrorCode::DanglingReference:
      return "DanglingReference";
    case ErrorCode::UnknownComparison:
      return "UnknownComparison";
    case ErrorCode::UndeclaredRowOrColumn:
      return "UndeclaredRowOrColumn";
    case ErrorCode::DuplicateProperty:
      return "DuplicateProperty";
    case ErrorCode::SyntaxError:
      return "SyntaxError";
    case ErrorCode::UnsupportedFeature:
      return "UnsupportedFeature";
    case ErrorCode::UnknownPrefix:
      return "UnknownPrefix";
    case ErrorCode::UnknownScopeTarget:
      return "UnknownScopeTarget";
    case ErrorCode::ParseError:
      return "ParseError";
    case ErrorCode::UnknownUriBase:
      return "UnknownUriBase";
    case ErrorCode::UnknownVersion:
      return "UnknownVersion";
    case ErrorCode::EmptyArticle:
      return "EmptyArticle";
    case ErrorCode::UnknownTarget:
      return "UnknownTarget";
    case ErrorCode::InvalidName:
      return "InvalidName";
    case ErrorCode::UnknownToken:
      return "UnknownToken";
    case ErrorCode::Unauthorized:
      return "Unauthorized";
    case ErrorCode::RateLimited:
      return "RateLimited";
    case ErrorCode::IoError:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace smartreview
