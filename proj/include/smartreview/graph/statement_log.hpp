#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "smartreview/graph/entity.hpp"

namespace smartreview::graph {

// Events of the append-only store log. The head graph is the fold of the log.
struct UserRegistered {
  std::string userId;
  bool operator==(const UserRegistered&) const = default;
};

struct EntityCreated {
  Entity entity;
};

struct StatementAdded {
  Statement statement;
  std::string objectDatatype;  // set when the object is a literal
};

// The statement as it was, plus who removed it and when. Retained forever.
struct StatementRemoved {
  Statement statement;
  Provenance removal;
  std::string objectDatatype;
};

using LogEvent = std::variant<UserRegistered, EntityCreated, StatementAdded, StatementRemoved>;

// One line, no trailing newline. Statement events follow
//   <event> <statementId> <subjKind:key> <predKey> <objKind:key[^^datatype]> <userId> <timestamp>
// Entity and user records are stored in the same file so replay alone
// restores the store.
std::string formatLogLine(const LogEvent& event);
// Throws Error(ParseError) on malformed input. Literal datatypes in statement
// lines are informational; the entity record is authoritative.
LogEvent parseLogLine(std::string_view line);

// Percent-encoding for free-text log fields; never produces whitespace.
std::string encodeField(std::string_view text);
std::string decodeField(std::string_view field);

}  // namespace smartreview::graph
