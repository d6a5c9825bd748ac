#include "smartreview/rdf/uri.hpp"

#include <charconv>

#include "smartreview/error.hpp"
#include "smartreview/graph/vocabulary.hpp"

namespace smartreview::rdf {

using graph::EntityId;
using graph::EntityKind;

namespace {

bool unreserved(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
         c == '.' || c == '_' || c == '~';
}

std::optional<EntityId> underBase(std::string_view uri, std::string_view base, EntityKind kind) {
  if (base.empty() || !uri.starts_with(base)) return std::nullopt;
  auto key = percentDecode(uri.substr(base.size()));
  if (!key || !graph::isValidKey(*key)) return std::nullopt;
  return EntityId{kind, *key};
}

}  // namespace

std::string percentEncodeKey(std::string_view key) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (char ch : key) {
    auto c = static_cast<unsigned char>(ch);
    if (unreserved(ch)) {
      out += ch;
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

std::optional<std::string> percentDecode(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out += text[i];
      continue;
    }
    if (i + 2 >= text.size()) return std::nullopt;
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + i + 3, value, 16);
    if (ec != std::errc{} || ptr != text.data() + i + 3) return std::nullopt;
    out += static_cast<char>(value);
    i += 2;
  }
  return out;
}

std::string UriMapping::toUri(const EntityId& id) const {
  switch (id.kind) {
    case EntityKind::Resource:
      return bases_.resource + percentEncodeKey(id.key);
    case EntityKind::Predicate:
      if (id.key == graph::vocab::kType) return std::string(kRdfNs) + "type";
      return bases_.predicate + percentEncodeKey(id.key);
    case EntityKind::Class:
      return bases_.klass + percentEncodeKey(id.key);
    case EntityKind::Literal:
      break;
  }
  throw Error(ErrorCode::InvalidKind, "literal " + id.key + " has no URI");
}

std::optional<EntityId> UriMapping::fromUri(std::string_view uri) const {
  if (uri == std::string(kRdfNs) + "type") {
    return EntityId::predicate(std::string(graph::vocab::kType));
  }
  // Longest base first, in case one configured base is a prefix of another.
  struct Candidate {
    std::string_view base;
    EntityKind kind;
  };
  Candidate candidates[] = {{bases_.resource, EntityKind::Resource},
                            {bases_.predicate, EntityKind::Predicate},
                            {bases_.klass, EntityKind::Class}};
  std::optional<EntityId> best;
  std::size_t bestLength = 0;
  for (const auto& c : candidates) {
    if (c.base.size() <= bestLength) continue;
    if (auto id = underBase(uri, c.base, c.kind)) {
      best = id;
      bestLength = c.base.size();
    }
  }
  return best;
}

std::string UriMapping::statementUri(graph::StatementId id) const {
  return bases_.statement + graph::toString(id);
}

bool UriMapping::isStatementUri(std::string_view uri) const {
  return !bases_.statement.empty() && uri.starts_with(bases_.statement);
}

std::string expandDatatype(std::string_view compact) {
  if (compact.starts_with("xsd:")) return std::string(kXsdNs) + std::string(compact.substr(4));
  return std::string(compact);
}

std::string compactDatatype(std::string_view iri) {
  if (iri.starts_with(kXsdNs)) return "xsd:" + std::string(iri.substr(kXsdNs.size()));
  return std::string(iri);
}

}  // namespace smartreview::rdf
