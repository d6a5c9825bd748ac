#include "smartreview/graph/entity.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <ctime>

namespace smartreview::graph {

char kindCode(EntityKind kind) {
  switch (kind) {
    case EntityKind::Resource:
      return 'R';
    case EntityKind::Predicate:
      return 'P';
    case EntityKind::Class:
      return 'C';
    case EntityKind::Literal:
      return 'L';
  }
  return '?';
}

std::optional<EntityKind> kindFromCode(char code) {
  switch (code) {
    case 'R':
      return EntityKind::Resource;
    case 'P':
      return EntityKind::Predicate;
    case 'C':
      return EntityKind::Class;
    case 'L':
      return EntityKind::Literal;
    default:
      return std::nullopt;
  }
}

std::string_view kindName(EntityKind kind) {
  switch (kind) {
    case EntityKind::Resource:
      return "Resource";
    case EntityKind::Predicate:
      return "Predicate";
    case EntityKind::Class:
      return "Class";
    case EntityKind::Literal:
      return "Literal";
  }
  return "?";
}

std::optional<EntityKind> kindFromName(std::string_view name) {
  for (auto kind :
       {EntityKind::Resource, EntityKind::Predicate, EntityKind::Class, EntityKind::Literal}) {
    auto expected = kindName(kind);
    if (name.size() != expected.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < name.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(name[i])) !=
          std::tolower(static_cast<unsigned char>(expected[i]))) {
        same = false;
        break;
      }
    }
    if (same) return kind;
  }
  return std::nullopt;
}

std::string toString(const EntityId& id) {
  std::string out;
  out.reserve(id.key.size() + 2);
  out.push_back(kindCode(id.kind));
  out.push_back(':');
  out += id.key;
  return out;
}

std::optional<EntityId> parseEntityId(std::string_view text) {
  if (text.size() < 3 || text[1] != ':') return std::nullopt;
  auto kind = kindFromCode(text[0]);
  if (!kind) return std::nullopt;
  auto key = text.substr(2);
  if (!isValidKey(key)) return std::nullopt;
  return EntityId{*kind, std::string(key)};
}

bool isValidKey(std::string_view key) {
  if (key.empty()) return false;
  for (unsigned char c : key) {
    if (std::isspace(c) || c < 0x20) return false;
  }
  return true;
}

Timestamp nowMillis() {
  return std::chrono::time_point_cast<std::chrono::milliseconds>(Clock::now());
}

std::string formatTimestamp(Timestamp ts) {
  auto millis = ts.time_since_epoch().count();
  auto seconds = millis / 1000;
  auto rest = millis % 1000;
  if (rest < 0) {
    rest += 1000;
    seconds -= 1;
  }
  std::time_t t = static_cast<std::time_t>(seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<int>(rest));
  return buf;
}

std::optional<Timestamp> parseTimestamp(std::string_view text) {
  // Only the exact form produced by formatTimestamp is accepted.
  if (text.size() != 24 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || text[19] != '.' || text[23] != 'Z') {
    return std::nullopt;
  }
  auto number = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, value);
    if (ec != std::errc() || ptr != text.data() + pos + len) return std::nullopt;
    return value;
  };
  auto year = number(0, 4), month = number(5, 2), day = number(8, 2);
  auto hour = number(11, 2), minute = number(14, 2), second = number(17, 2);
  auto milli = number(20, 3);
  if (!year || !month || !day || !hour || !minute || !second || !milli) return std::nullopt;
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{*year}, std::chrono::month{static_cast<unsigned>(*month)},
                     std::chrono::day{static_cast<unsigned>(*day)}};
  if (!ymd.ok() || *hour > 23 || *minute > 59 || *second > 60) return std::nullopt;
  auto tp =
      sys_days{ymd} + hours{*hour} + minutes{*minute} + seconds{*second} + milliseconds{*milli};
  return Timestamp{duration_cast<milliseconds>(tp.time_since_epoch())};
}

std::string toString(StatementId id) { return "S" + std::to_string(id.value); }

std::optional<StatementId> parseStatementId(std::string_view text) {
  if (text.size() < 2 || text[0] != 'S') return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return StatementId{value};
}

}  // namespace smartreview::graph
