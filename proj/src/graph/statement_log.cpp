#include "smartreview/graph/statement_log.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

#include "smartreview/error.hpp"

namespace smartreview::graph {

namespace {

bool isPlain(unsigned char c) {
  return std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~' || c == ':' || c == '/' ||
         c == '@' || c == '^' || c >= 0x80;
}

std::vector<std::string_view> splitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

[[noreturn]] void malformed(std::string_view line, std::string_view why) {
  throw Error(ErrorCode::ParseError,
              "malformed log record (" + std::string(why) + "): " + std::string(line));
}

std::string formatObject(const Statement& s, const std::string& datatype) {
  std::string out = toString(s.object());
  if (!datatype.empty()) out += "^^" + datatype;
  return out;
}

}  // namespace

std::string encodeField(std::string_view text) {
  if (text.empty()) return "%";
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (isPlain(c)) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

std::string decodeField(std::string_view field) {
  if (field == "%") return {};
  std::string out;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] == '%') {
      unsigned value = 0;
      const char* begin = field.data() + i + 1;
      auto [ptr, ec] = i + 2 < field.size()
                           ? std::from_chars(begin, begin + 2, value, 16)
                           : std::from_chars_result{begin, std::errc::invalid_argument};
      if (ec != std::errc() || ptr != begin + 2) {
        throw Error(ErrorCode::ParseError, "bad escape in field: " + std::string(field));
      }
      out.push_back(static_cast<char>(value));
      i += 2;
    } else {
      out.push_back(field[i]);
    }
  }
  return out;
}

std::string formatLogLine(const LogEvent& event) {
  std::ostringstream out;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, UserRegistered>) {
          out << "user " << encodeField(e.userId);
        } else if constexpr (std::is_same_v<T, EntityCreated>) {
          const Entity& entity = e.entity;
          out << "entity " << toString(entity.id) << ' ' << (entity.shared ? "shared" : "-") << ' '
              << encodeField(entity.label);
          if (entity.literal) {
            out << ' ' << encodeField(entity.literal->value) << ' '
                << encodeField(entity.literal->datatype);
          }
        } else {
          const Statement& s = e.statement;
          Provenance p = s.provenance;
          std::string event = "add";
          if constexpr (std::is_same_v<T, StatementRemoved>) {
            p = e.removal;
            event = "remove";
          }
          out << event << ' ' << toString(s.id) << ' ' << toString(s.subject()) << ' '
              << s.predicate().key << ' ' << formatObject(s, e.objectDatatype) << ' '
              << encodeField(p.userId) << ' ' << formatTimestamp(p.timestamp);
        }
      },
      event);
  return out.str();
}

LogEvent parseLogLine(std::string_view line) {
  auto fields = splitFields(line);
  if (fields.empty()) malformed(line, "empty");
  std::string_view event = fields[0];
  if (event == "user") {
    if (fields.size() != 2) malformed(line, "user arity");
    return UserRegistered{decodeField(fields[1])};
  }
  if (event == "entity") {
    if (fields.size() != 4 && fields.size() != 6) malformed(line, "entity arity");
    auto id = parseEntityId(fields[1]);
    if (!id) malformed(line, "entity id");
    Entity entity;
    entity.id = *id;
    entity.shared = fields[2] == "shared";
    entity.label = decodeField(fields[3]);
    if (fields.size() == 6) {
      entity.literal = LiteralValue{decodeField(fields[4]), decodeField(fields[5])};
    }
    if ((entity.id.kind == EntityKind::Literal) != entity.literal.has_value()) {
      malformed(line, "literal fields");
    }
    return EntityCreated{std::move(entity)};
  }
  if (event == "add" || event == "remove") {
    if (fields.size() != 7) malformed(line, "statement arity");
    auto id = parseStatementId(fields[1]);
    auto subject = parseEntityId(fields[2]);
    std::string_view objectField = fields[4];
    std::string datatype;
    if (auto caret = objectField.find("^^"); caret != std::string_view::npos) {
      datatype = std::string(objectField.substr(caret + 2));
      objectField = objectField.substr(0, caret);
    }
    auto object = parseEntityId(objectField);
    auto timestamp = parseTimestamp(fields[6]);
    if (!id || !subject || !object || !timestamp || !isValidKey(fields[3])) {
      malformed(line, "statement fields");
    }
    Statement s;
    s.id = *id;
    s.triple = {*subject, EntityId::predicate(std::string(fields[3])), *object};
    Provenance p{decodeField(fields[5]), *timestamp};
    if (event == "add") {
      s.provenance = p;
      return StatementAdded{std::move(s), std::move(datatype)};
    }
    // The original provenance is recovered from the matching add record.
    return StatementRemoved{std::move(s), p, std::move(datatype)};
  }
  malformed(line, "unknown event");
}

}  // namespace smartreview::graph
