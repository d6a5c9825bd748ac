#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace smartreview::graph {

enum class EntityKind { Resource, Predicate, Class, Literal };

// One-letter code used in the statement log ("R", "P", "C", "L").
char kindCode(EntityKind kind);
std::optional<EntityKind> kindFromCode(char code);
std::string_view kindName(EntityKind kind);
std::optional<EntityKind> kindFromName(std::string_view name);

struct EntityId {
  EntityKind kind = EntityKind::Resource;
  std::string key;

  auto operator<=>(const EntityId&) const = default;
  bool operator==(const EntityId&) const = default;

  static EntityId resource(std::string key) { return {EntityKind::Resource, std::move(key)}; }
  static EntityId predicate(std::string key) { return {EntityKind::Predicate, std::move(key)}; }
  static EntityId klass(std::string key) { return {EntityKind::Class, std::move(key)}; }
  static EntityId literal(std::string key) { return {EntityKind::Literal, std::move(key)}; }
};

// "R:R278", "P:P30", ...
std::string toString(const EntityId& id);
std::optional<EntityId> parseEntityId(std::string_view text);

// A key is usable iff it is non-empty and free of whitespace.
bool isValidKey(std::string_view key);

struct LiteralValue {
  std::string value;
  std::string datatype;  // compact form, e.g. "xsd:string"

  auto operator<=>(const LiteralValue&) const = default;
  bool operator==(const LiteralValue&) const = default;
};

struct Entity {
  EntityId id;
  std::string label;
  std::optional<LiteralValue> literal;  // present iff id.kind == Literal
  // Shared vocabulary is referenced by articles, never owned: traversal does
  // not expand it.
  bool shared = false;
};

using Clock = std::chrono::system_clock;
using Timestamp = std::chrono::time_point<Clock, std::chrono::milliseconds>;

Timestamp nowMillis();
std::string formatTimestamp(Timestamp ts);  // 2021-05-04T10:11:12.345Z
std::optional<Timestamp> parseTimestamp(std::string_view text);

struct Provenance {
  std::string userId;
  Timestamp timestamp{};

  bool operator==(const Provenance&) const = default;
};

struct StatementId {
  std::uint64_t value = 0;

  auto operator<=>(const StatementId&) const = default;
  bool operator==(const StatementId&) const = default;
};

std::string toString(StatementId id);  // "S42"
std::optional<StatementId> parseStatementId(std::string_view text);

// The content of a statement: what diffs and query semantics compare.
struct Triple {
  EntityId subject;
  EntityId predicate;
  EntityId object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

struct Statement {
  StatementId id;
  Triple triple;
  Provenance provenance;

  const EntityId& subject() const { return triple.subject; }
  const EntityId& predicate() const { return triple.predicate; }
  const EntityId& object() const { return triple.object; }

  bool operator==(const Statement&) const = default;
};

}  // namespace smartreview::graph
