#include "smartreview/rdf/rdf_io.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "smartreview/error.hpp"
#include "smartreview/graph/vocabulary.hpp"

namespace smartreview::rdf {

using graph::EntityId;
using graph::EntityKind;
namespace vocab = graph::vocab;

namespace {

const std::string kRdfType = std::string(kRdfNs) + "type";
const std::string kRdfsLabel = std::string(kRdfsNs) + "label";
const std::string kXsdString = std::string(kXsdNs) + "string";
const std::string kDctermsNs = "http://purl.org/dc/terms/";

// A triple ready for serialization; `object` is already an encoded N-Triples
// term so that sorting and deduplication work on the final text.
struct OutTriple {
  std::string subject;
  std::string predicate;
  std::string object;
  auto operator<=>(const OutTriple&) const = default;
};

std::string hex4(unsigned value) {
  static constexpr char digits[] = "0123456789ABCDEF";
  std::string out = "\\u";
  for (int shift = 12; shift >= 0; shift -= 4) out += digits[(value >> shift) & 15];
  return out;
}

class Collector {
 public:
  Collector(const graph::GraphView& view, const UriMapping& mapping, const ExportOptions& options)
      : view_(view), mapping_(mapping), options_(options) {}

  std::set<OutTriple> run() {
    std::set<EntityId> labeled;
    for (const auto& st : view_.statements()) {
      emit(st);
      for (const EntityId* id : {&st.subject(), &st.predicate(), &st.object()}) {
        if (id->kind != EntityKind::Literal && id->key != vocab::kType) labeled.insert(*id);
      }
    }
    for (const auto& id : labeled) {
      std::string label = view_.label(id);
      if (!label.empty()) add(mapping_.toUri(id), kRdfsLabel, ntriplesLiteral(label, kXsdString));
    }
    addPublishingTypes();
    return std::move(out_);
  }

 private:
  void add(const std::string& s, const std::string& p, std::string o) {
    out_.insert({s, p, std::move(o)});
  }

  std::string objectTerm(const EntityId& id) const {
    if (id.kind != EntityKind::Literal) return ntriplesIri(mapping_.toUri(id));
    const graph::Entity* e = view_.entity(id);
    if (!e || !e->literal) throw Error(ErrorCode::UnknownEntity, "literal " + id.key + " missing");
    return ntriplesLiteral(e->literal->value, expandDatatype(e->literal->datatype));
  }

  void emit(const graph::Statement& st) {
    std::string s = mapping_.toUri(st.subject());
    std::string p = mapping_.toUri(st.predicate());
    std::string o = objectTerm(st.object());
    if (options_.provenance) {
      std::string r = mapping_.statementUri(st.id);
      add(r, kRdfType, ntriplesIri(std::string(kRdfNs) + "Statement"));
      add(r, std::string(kRdfNs) + "subject", ntriplesIri(s));
      add(r, std::string(kRdfNs) + "predicate", ntriplesIri(p));
      add(r, std::string(kRdfNs) + "object", o);
      add(r, kDctermsNs + "creator", ntriplesLiteral(st.provenance.userId, kXsdString));
      add(r, kDctermsNs + "created",
          ntriplesLiteral(graph::formatTimestamp(st.provenance.timestamp),
                          std::string(kXsdNs) + "dateTime"));
    }
    add(s, p, std::move(o));
  }

  void addPublishingTypes() {
    auto type = [&](const EntityId& subject, std::string_view klass) {
      add(mapping_.toUri(subject), kRdfType, ntriplesIri(klass));
    };
    for (const auto& st : view_.statements()) {
      const auto& key = st.predicate().key;
      if (key == vocab::kHasSection) {
        if (st.object().kind != EntityKind::Literal) type(st.object(), kSectionClass);
        continue;
      }
      if (key != vocab::kType) continue;
      const auto& klass = st.object().key;
      if (klass == vocab::kSmartReview) {
        type(st.subject(), kArticleWorkClass);
      } else if (klass == vocab::kPaper) {
        type(st.subject(), kPaperWorkClass);
      } else if (vocab::isDeoClass(klass)) {
        type(st.subject(), kSectionClass);
        type(st.subject(), std::string(kDeoNs) + percentEncodeKey(klass));
      } else if (vocab::isStructuralSectionClass(klass)) {
        type(st.subject(), kSectionClass);
      }
    }
  }

  const graph::GraphView& view_;
  const UriMapping& mapping_;
  const ExportOptions& options_;
  std::set<OutTriple> out_;
};

std::string toNTriples(const std::set<OutTriple>& triples) {
  std::vector<std::string> lines;
  lines.reserve(triples.size());
  for (const auto& t : triples) {
    lines.push_back(ntriplesIri(t.subject) + " " + ntriplesIri(t.predicate) + " " + t.object +
                    " .\n");
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string out;
  for (const auto& line : lines) out += line;
  return out;
}

// Turtle ----------------------------------------------------------------------

struct Prefix {
  std::string_view name;
  std::string ns;
};

std::vector<Prefix> turtlePrefixes(const UriMapping& mapping) {
  return {{"orkgr", mapping.bases().resource}, {"orkgp", mapping.bases().predicate},
          {"orkgc", mapping.bases().klass},    {"rdf", std::string(kRdfNs)},
          {"rdfs", std::string(kRdfsNs)},      {"xsd", std::string(kXsdNs)},
          {"doco", std::string(kDocoNs)},      {"fabio", std::string(kFabioNs)},
          {"deo", std::string(kDeoNs)},        {"dcterms", kDctermsNs},
          {"orkgs", mapping.bases().statement}};
}

bool safeLocalName(std::string_view local) {
  if (local.empty() || local.front() == '-') return false;
  return std::all_of(local.begin(), local.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-';
  });
}

class TurtleWriter {
 public:
  explicit TurtleWriter(const UriMapping& mapping) : prefixes_(turtlePrefixes(mapping)) {}

  std::string write(const std::set<OutTriple>& triples) {
    std::map<std::string, std::map<std::string, std::vector<std::string>>> bySubject;
    for (const auto& t : triples) bySubject[t.subject][t.predicate].push_back(t.object);

    std::string body;
    for (const auto& [subject, predicates] : bySubject) {
      body += iri(subject);
      bool firstPredicate = true;
      // rdf:type first, as `a`, the rest in IRI order.
      std::vector<std::pair<std::string, const std::vector<std::string>*>> ordered;
      for (const auto& [p, objects] : predicates) {
        if (p == kRdfType)
          ordered.insert(ordered.begin(), {p, &objects});
        else
          ordered.emplace_back(p, &objects);
      }
      for (const auto& [p, objects] : ordered) {
        body += firstPredicate ? " " : " ;\n    ";
        firstPredicate = false;
        body += p == kRdfType ? std::string("a") : iri(p);
        for (std::size_t i = 0; i < objects->size(); ++i) {
          body += i == 0 ? " " : ", ";
          body += object((*objects)[i]);
        }
      }
      body += " .\n";
    }
    if (body.empty()) return "";
    std::string head;
    for (const auto& p : prefixes_) {
      if (used_.count(p.name)) head += "@prefix " + std::string(p.name) + ": <" + p.ns + "> .\n";
    }
    return head + "\n" + body;
  }

 private:
  std::string iri(const std::string& full) {
    const Prefix* best = nullptr;
    for (const auto& p : prefixes_) {
      if (!p.ns.empty() && full.starts_with(p.ns) && safeLocalName(full.substr(p.ns.size())) &&
          (!best || p.ns.size() > best->ns.size())) {
        best = &p;
      }
    }
    if (!best) return ntriplesIri(full);
    used_.insert(best->name);
    return std::string(best->name) + ":" + full.substr(best->ns.size());
  }

  // Objects arrive N-Triples encoded; compact IRIs and datatypes.
  std::string object(const std::string& term) {
    if (term.front() == '<') return iri(term.substr(1, term.size() - 2));
    auto caret = term.rfind("\"^^<");
    if (caret == std::string::npos) return term;
    std::string datatype = term.substr(caret + 4, term.size() - caret - 5);
    return term.substr(0, caret + 3) + iri(datatype);
  }

  std::vector<Prefix> prefixes_;
  std::set<std::string_view> used_;
};

// N-Triples parsing -------------------------------------------------------------

void appendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  // nullopt for blank and comment-only lines.
  std::optional<RdfTriple> parse() {
    skipSpace();
    if (done()) return std::nullopt;
    RdfTriple t;
    t.line = line_;
    t.subject = iriRef("subject");
    skipSpace();
    t.predicate = iriRef("predicate");
    skipSpace();
    if (peek() == '"') {
      t.object = literal();
    } else {
      t.object = iriRef("object");
    }
    skipSpace();
    if (peek() != '.') fail("expected '.'");
    ++pos_;
    skipSpace();
    if (!done()) fail("unexpected text after '.'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw LocatedError(ErrorCode::ParseError,
                       "N-Triples parse error on line " + std::to_string(line_) + ": " + message,
                       line_);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  // True at end of line or at a trailing comment.
  bool done() const { return pos_ >= text_.size() || text_[pos_] == '#'; }

  void skipSpace() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  std::uint32_t hexDigits(int count) {
    if (pos_ + static_cast<std::size_t>(count) > text_.size()) fail("truncated escape");
    std::uint32_t value = 0;
    for (int i = 0; i < count; ++i) {
      char c = text_[pos_++];
      value <<= 4;
      if (c >= '0' && c <= '9')
        value |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f')
        value |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F')
        value |= static_cast<std::uint32_t>(c - 'A' + 10);
      else
        fail("bad hex digit in escape");
    }
    if (value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) fail("invalid code point");
    return value;
  }

  IriTerm iriRef(const char* what) {
    if (text_.substr(pos_, 2) == "_:") fail("blank nodes are not supported");
    if (peek() != '<') fail(std::string("expected IRI as ") + what);
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated IRI");
      char c = text_[pos_++];
      if (c == '>') break;
      if (c == '\\') {
        char kind = peek();
        ++pos_;
        if (kind == 'u')
          appendUtf8(out, hexDigits(4));
        else if (kind == 'U')
          appendUtf8(out, hexDigits(8));
        else
          fail("bad escape in IRI");
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 ||
          std::string_view("<\"{}|^`").find(c) != std::string_view::npos) {
        fail("character not allowed in IRI");
      }
      out += c;
    }
    if (out.find(':') == std::string::npos) fail("relative IRI");
    return {out};
  }

  LiteralTerm literal() {
    ++pos_;  // opening quote
    LiteralTerm lit;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated literal");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated literal");
        char e = text_[pos_++];
        switch (e) {
          case 't':
            lit.value += '\t';
            break;
          case 'b':
            lit.value += '\b';
            break;
          case 'n':
            lit.value += '\n';
            break;
          case 'r':
            lit.value += '\r';
            break;
          case 'f':
            lit.value += '\f';
            break;
          case '"':
            lit.value += '"';
            break;
          case '\'':
            lit.value += '\'';
            break;
          case '\\':
            lit.value += '\\';
            break;
          case 'u':
            appendUtf8(lit.value, hexDigits(4));
            break;
          case 'U':
            appendUtf8(lit.value, hexDigits(8));
            break;
          default:
            fail("bad escape in literal");
        }
        continue;
      }
      if (c == '\n' || c == '\r') fail("raw line break in literal");
      lit.value += c;
    }
    if (peek() == '@') fail("language-tagged literals are not supported");
    if (text_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      lit.datatype = iriRef("datatype").iri;
    } else {
      lit.datatype = kXsdString;
    }
    return lit;
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

[[noreturn]] void unknownBase(const RdfTriple& t, const std::string& iri) {
  throw LocatedError(
      ErrorCode::UnknownUriBase,
      "line " + std::to_string(t.line) + ": <" + iri + "> is not under a known URI base", t.line);
}

bool isPublishingType(const std::string& iri) {
  return iri.starts_with(kDocoNs) || iri.starts_with(kFabioNs) || iri.starts_with(kDeoNs);
}

}  // namespace

std::string_view mediaType(RdfFormat format) {
  return format == RdfFormat::NTriples ? "application/n-triples" : "text/turtle";
}

std::string ntriplesIri(std::string_view iri) {
  std::string out = "<";
  for (char ch : iri) {
    auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || std::string_view("<>\"{}|^`\\").find(ch) != std::string_view::npos) {
      out += hex4(c);
    } else {
      out += ch;
    }
  }
  return out + ">";
}

std::string ntriplesLiteral(std::string_view value, std::string_view datatypeIri) {
  std::string out = "\"";
  for (char ch : value) {
    auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (c < 0x20 || c == 0x7F)
          out += hex4(c);
        else
          out += ch;
    }
  }
  // The datatype is always explicit, xsd:string included, so the dump reads
  // the same way the queries write literals.
  return out + "\"^^" + ntriplesIri(datatypeIri);
}

std::string exportRdf(const graph::GraphView& view, RdfFormat format, const UriMapping& mapping,
                      const ExportOptions& options) {
  auto triples = Collector(view, mapping, options).run();
  if (format == RdfFormat::NTriples) return toNTriples(triples);
  return TurtleWriter(mapping).write(triples);
}

std::vector<RdfTriple> parseNTriples(std::string_view document) {
  std::vector<RdfTriple> out;
  std::size_t line = 0;
  std::size_t start = 0;
  while (start < document.size()) {
    std::size_t end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    std::string_view text = document.substr(start, end - start);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    ++line;
    if (auto t = LineParser(text, line).parse()) out.push_back(std::move(*t));
    start = end + 1;
  }
  return out;
}

std::size_t importNTriples(graph::Store& store, std::string_view document,
                           const UriMapping& mapping) {
  struct Pending {
    EntityId subject;
    EntityId predicate;
    std::variant<EntityId, graph::LiteralValue> object;
    std::size_t line;
  };
  auto triples = parseNTriples(document);

  // Resolve every term before touching the store.
  std::map<EntityId, std::string> labels;
  std::set<EntityId> mentioned;
  std::vector<Pending> pending;
  auto resolve = [&](const RdfTriple& t, const std::string& iri) {
    auto id = mapping.fromUri(iri);
    if (!id) unknownBase(t, iri);
    if (id->key != vocab::kType) mentioned.insert(*id);
    return *id;
  };
  for (const auto& t : triples) {
    if (mapping.isStatementUri(t.subject.iri)) continue;  // provenance annotation
    const auto* objectIri = std::get_if<IriTerm>(&t.object);
    if (t.predicate.iri == kRdfType && objectIri && isPublishingType(objectIri->iri)) continue;
    EntityId subject = resolve(t, t.subject.iri);
    if (t.predicate.iri == kRdfsLabel) {
      const auto* lit = std::get_if<LiteralTerm>(&t.object);
      if (!lit) {
        throw LocatedError(ErrorCode::ParseError,
                           "line " + std::to_string(t.line) + ": label must be a literal", t.line);
      }
      labels[subject] = lit->value;
      continue;
    }
    EntityId predicate = resolve(t, t.predicate.iri);
    if (predicate.kind != EntityKind::Predicate) unknownBase(t, t.predicate.iri);
    Pending p{subject, predicate, EntityId{}, t.line};
    if (objectIri) {
      p.object = resolve(t, objectIri->iri);
    } else {
      const auto& lit = std::get<LiteralTerm>(t.object);
      p.object = graph::LiteralValue{lit.value, compactDatatype(lit.datatype)};
    }
    pending.push_back(std::move(p));
  }

  graph::Provenance provenance{std::string(vocab::kImportUser), graph::nowMillis()};
  return store.write([&](graph::GraphState& g) {
    for (const auto& id : mentioned) {
      if (g.hasEntity(id)) continue;
      graph::EntitySpec spec;
      spec.kind = id.kind;
      auto label = labels.find(id);
      spec.label = label != labels.end() && !label->second.empty() ? label->second : id.key;
      spec.key = id.key;
      g.createEntity(spec, provenance);
    }
    std::size_t added = 0;
    for (const auto& p : pending) {
      try {
        EntityId object;
        if (const auto* id = std::get_if<EntityId>(&p.object)) {
          object = *id;
        } else {
          graph::EntitySpec spec;
          spec.kind = EntityKind::Literal;
          spec.literal = std::get<graph::LiteralValue>(p.object);
          object = g.createEntity(spec, provenance);
        }
        if (!g.getStatements({p.subject, p.predicate, object}).empty()) continue;
        g.addStatement(p.subject, p.predicate, object, provenance);
        ++added;
      } catch (const LocatedError&) {
        throw;
      } catch (const Error& e) {
        throw LocatedError(e.code(), "line " + std::to_string(p.line) + ": " + e.what(), p.line);
      }
    }
    return added;
  });
}

}  // namespace smartreview::rdf
