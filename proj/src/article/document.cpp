#include "smartreview/article/document.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "smartreview/error.hpp"
#include "smartreview/graph/vocabulary.hpp"

namespace smartreview::article {

using graph::EntityKind;
using graph::GraphState;
using graph::GraphView;
using graph::Provenance;
namespace vocab = graph::vocab;

namespace {

constexpr std::string_view kMagic = "smartreview-document 1";
constexpr std::string_view kIndent = "    ";
constexpr std::string_view kResourcePrefix = "orkgr:";
constexpr std::string_view kPredicatePrefix = "orkgp:";

[[noreturn]] void parseError(std::size_t line, const std::string& message) {
  throw LocatedError(ErrorCode::ParseError,
                     "document line " + std::to_string(line) + ": " + message, line);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> splitWords(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

// --- raw structure ---

struct Field {
  std::string value;
  std::size_t line;
};

struct Block {
  std::string kind;
  std::string key;  // may be empty
  std::size_t line = 0;
  std::map<std::string, Field> fields;
  std::vector<Field> links;  // header-only repeatable field

  const Field* get(const std::string& name) const {
    auto it = fields.find(name);
    return it == fields.end() ? nullptr : &it->second;
  }
  std::string value(const std::string& name) const {
    const Field* f = get(name);
    return f ? f->value : std::string();
  }
  const Field& require(const std::string& name) const {
    const Field* f = get(name);
    if (!f) parseError(line, "[" + kind + "] is missing '" + name + "'");
    return *f;
  }
};

struct RawDocument {
  Block header;
  std::vector<Block> blocks;
};

std::vector<std::string_view> splitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

RawDocument parseRaw(std::string_view text) {
  auto lines = splitLines(text);
  RawDocument doc;
  doc.header.kind = "header";
  Block* current = &doc.header;
  bool sawMagic = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::size_t lineNo = i + 1;
    std::string_view line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    if (!sawMagic) {
      if (trim(line) != kMagic) parseError(lineNo, "expected '" + std::string(kMagic) + "'");
      sawMagic = true;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') parseError(lineNo, "unterminated block header");
      auto words = splitWords(line.substr(1, line.size() - 2));
      if (words.empty() || words.size() > 2) parseError(lineNo, "malformed block header");
      doc.blocks.push_back({words[0], words.size() == 2 ? words[1] : "", lineNo, {}, {}});
      current = &doc.blocks.back();
      continue;
    }
    if (line.front() == ' ' || line.front() == '\t') parseError(lineNo, "unexpected indentation");
    auto colon = line.find(':');
    if (colon == std::string_view::npos) parseError(lineNo, "expected 'name: value'");
    std::string name = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (value == "|") {
      // Indented block: every following blank or four-space-indented line.
      std::string body;
      std::size_t j = i + 1;
      std::vector<std::string> collected;
      while (j < lines.size()) {
        auto next = lines[j];
        bool blank = next.find_first_not_of(" \t") == std::string_view::npos;
        if (!blank && !next.starts_with(kIndent)) break;
        collected.emplace_back(blank ? std::string_view() : next.substr(kIndent.size()));
        ++j;
      }
      while (!collected.empty() && collected.back().empty()) collected.pop_back();
      for (std::size_t k = 0; k < collected.size(); ++k) {
        if (k > 0) body += '\n';
        body += collected[k];
      }
      value = body;
      i = j - 1;
    }
    if (name == "link" && current == &doc.header) {
      current->links.push_back({value, lineNo});
      continue;
    }
    if (!current->fields.emplace(name, Field{value, lineNo}).second) {
      parseError(lineNo, "duplicate field '" + name + "'");
    }
  }
  if (!sawMagic) parseError(1, "empty document");
  return doc;
}

// --- cell values ---

std::string escapeValue(std::string_view value) {
  std::string out;
  if (value.starts_with(kResourcePrefix)) out += '\\';
  for (char c : value) {
    if (c == '\\' || c == ';' || c == '^') out += '\\';
    out += c;
  }
  return out;
}

struct RawValue {
  std::string text;
  bool resource = false;
  std::string datatype;
};

std::vector<RawValue> splitValues(std::string_view cell, std::size_t line) {
  std::vector<RawValue> out;
  std::string text;
  std::string datatype;
  bool inDatatype = false;
  bool escapedStart = false;
  bool any = false;
  auto flush = [&] {
    std::string t = inDatatype ? text : trim(text);
    std::string dt = trim(datatype);
    if (!any && t.empty() && dt.empty()) return;
    RawValue v;
    v.datatype = dt;
    if (!inDatatype) t = text;
    // Trim the value itself but keep escaped content intact.
    v.text = trim(t);
    v.resource = !escapedStart && v.text.starts_with(kResourcePrefix) && v.datatype.empty();
    if (v.resource) v.text = v.text.substr(kResourcePrefix.size());
    out.push_back(std::move(v));
  };
  auto reset = [&] {
    text.clear();
    datatype.clear();
    inDatatype = false;
    escapedStart = false;
    any = false;
  };
  for (std::size_t i = 0; i < cell.size(); ++i) {
    char c = cell[i];
    if (c == '\\') {
      if (i + 1 >= cell.size()) parseError(line, "dangling backslash in cell");
      if (!any && trim(text).empty()) escapedStart = true;
      (inDatatype ? datatype : text) += cell[++i];
      any = true;
      continue;
    }
    if (c == ';') {
      flush();
      reset();
      continue;
    }
    if (c == '^' && i + 1 < cell.size() && cell[i + 1] == '^' && !inDatatype) {
      inDatatype = true;
      ++i;
      continue;
    }
    (inDatatype ? datatype : text) += c;
    if (c != ' ' && c != '\t') any = true;
  }
  flush();
  return out;
}

// --- import ---

class Importer {
 public:
  Importer(GraphState& g, const Provenance& p) : g_(g), p_(p) {}

  EntityId run(const RawDocument& doc) {
    for (const auto& b : doc.blocks) {
      if (b.kind == "property")
        property(b);
      else if (b.kind == "resource")
        resource(b);
    }
    for (const auto& b : doc.blocks) {
      if (b.kind == "paper") paper(b);
    }
    EntityId articleId = article(doc.header);
    for (const auto& b : doc.blocks) {
      if (b.kind == "comparison") comparison(b);
    }
    for (const auto& b : doc.blocks) {
      if (b.kind == "visualization") visualization(b);
    }
    std::size_t position = 0;
    for (const auto& b : doc.blocks) {
      if (b.kind == "section") section(articleId, b, position++);
    }
    for (const auto& b : doc.blocks) {
      static const std::set<std::string> known = {"property",   "resource",      "paper",
                                                  "comparison", "visualization", "section"};
      if (!known.count(b.kind)) parseError(b.line, "unknown block kind '" + b.kind + "'");
    }
    return articleId;
  }

 private:
  template <class F>
  auto at(std::size_t line, F&& f) {
    try {
      return f();
    } catch (const LocatedError&) {
      throw;
    } catch (const Error& e) {
      throw LocatedError(e.code(), "document line " + std::to_string(line) + ": " + e.what(), line);
    }
  }

  void requireKey(const Block& b) {
    if (b.key.empty()) parseError(b.line, "[" + b.kind + "] needs a key");
  }

  void describe(const Block& b, const EntityId& id) {
    if (b.get("description") || b.get("same-as")) {
      std::optional<std::string> sameAs;
      if (const Field* f = b.get("same-as")) sameAs = f->value;
      at(b.line, [&] { ops::describeEntity(g_, id, b.value("description"), sameAs, p_); });
    }
  }

  void property(const Block& b) {
    requireKey(b);
    EntityId id = EntityId::predicate(b.key);
    std::string label = b.value("label");
    if (!g_.hasEntity(id)) {
      at(b.line, [&] {
        g_.createEntity({EntityKind::Predicate, label.empty() ? b.key : label, {}, {}, b.key}, p_);
      });
    }
    propertyLabels_[label.empty() ? g_.findEntity(id)->label : label].push_back(id);
    describe(b, id);
  }

  void resource(const Block& b) {
    requireKey(b);
    EntityId id = EntityId::resource(b.key);
    if (!g_.hasEntity(id)) {
      std::string label = b.value("label");
      at(b.line, [&] {
        g_.createEntity({EntityKind::Resource, label.empty() ? b.key : label, {}, {}, b.key}, p_);
      });
    }
    describe(b, id);
  }

  void paper(const Block& b) {
    requireKey(b);
    EntityId id = EntityId::resource(b.key);
    std::vector<EntityId> contributions;
    std::string title = b.require("title").value;
    if (g_.hasEntity(id)) {
      for (const auto* s : g_.outgoing(id)) {
        if (s->predicate().key == vocab::kHasContribution) contributions.push_back(s->object());
      }
    } else {
      PaperInput input;
      input.title = title;
      input.key = b.key;
      input.publicationDate = b.value("date");
      if (const Field* f = b.get("authors")) {
        std::string_view rest = f->value;
        while (!rest.empty()) {
          auto semi = rest.find(';');
          auto name = trim(rest.substr(0, semi));
          if (!name.empty()) input.authors.push_back(name);
          if (semi == std::string_view::npos) break;
          rest.remove_prefix(semi + 1);
        }
      }
      input.contributionKeys = splitWords(b.value("contributions"));
      contributions = at(b.line, [&] { return ops::createPaper(g_, input, p_).contributions; });
    }
    papersByTitle_[title].push_back(id);
    contributionsOf_[id] = contributions;
  }

  EntityId article(const Block& h) {
    std::string title = h.require("title").value;
    auto fieldKey = h.require("research-field");
    std::optional<std::string> key;
    if (const Field* f = h.get("key")) key = f->value;
    EntityId id = at(fieldKey.line, [&] {
      return ops::createArticle(g_, title, EntityId::resource(fieldKey.value), p_, key).id;
    });
    for (const auto& link : h.links) {
      auto words = splitWords(link.value);
      if (words.size() != 2) parseError(link.line, "link needs a predicate and a resource key");
      at(link.line, [&] {
        ops::linkArticle(g_, id, EntityId::predicate(words[0]), EntityId::resource(words[1]), p_);
      });
    }
    return id;
  }

  EntityId resolveProperty(const std::string& header, std::size_t line) {
    if (header.starts_with(kPredicatePrefix)) {
      return EntityId::predicate(header.substr(kPredicatePrefix.size()));
    }
    auto it = propertyLabels_.find(header);
    if (it != propertyLabels_.end() && it->second.size() == 1) return it->second.front();
    std::vector<EntityId> matches;
    for (const auto& e : g_.suggestEntities(EntityKind::Predicate, header)) {
      if (e.label == header) matches.push_back(e.id);
    }
    if (matches.size() != 1) {
      parseError(line,
                 (matches.empty() ? "unknown property '" : "ambiguous property '") + header + "'");
    }
    return matches.front();
  }

  void comparison(const Block& b) {
    requireKey(b);
    const Field& csv = b.require("csv");
    auto rows = at(csv.line, [&] { return parseCsv(csv.value); });
    if (rows.empty()) parseError(csv.line, "comparison CSV needs a header row");
    std::vector<EntityId> properties;
    for (std::size_t i = 1; i < rows[0].size(); ++i) {
      properties.push_back(resolveProperty(trim(rows[0][i]), csv.line));
    }
    std::vector<ComparisonColumn> columns;
    std::vector<CellInput> cells;
    std::map<EntityId, std::size_t> occurrences;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      std::size_t line = csv.line + r + 1;
      if (row.size() > properties.size() + 1) parseError(line, "row has more cells than header");
      std::string head = trim(row[0]);
      ComparisonColumn col;
      if (head.starts_with(kResourcePrefix)) {
        col.contribution = EntityId::resource(head.substr(kResourcePrefix.size()));
        bool found = false;
        for (const auto& [paper, contribs] : contributionsOf_) {
          if (std::find(contribs.begin(), contribs.end(), col.contribution) != contribs.end()) {
            col.paper = paper;
            found = true;
          }
        }
        if (!found) parseError(line, "contribution " + col.contribution.key + " of no paper");
      } else {
        auto it = papersByTitle_.find(head);
        if (it == papersByTitle_.end()) parseError(line, "unknown paper '" + head + "'");
        if (it->second.size() != 1) parseError(line, "ambiguous paper title '" + head + "'");
        col.paper = it->second.front();
        std::size_t n = occurrences[col.paper]++;
        const auto& contribs = contributionsOf_[col.paper];
        if (n >= contribs.size())
          parseError(line, "paper '" + head + "' has too few contributions");
        col.contribution = contribs[n];
      }
      columns.push_back(col);
      for (std::size_t i = 1; i < row.size(); ++i) {
        CellInput cell{col.contribution, properties[i - 1], {}};
        for (const auto& v : splitValues(row[i], line)) {
          if (v.resource) {
            cell.values.emplace_back(EntityId::resource(v.text));
          } else {
            cell.values.emplace_back(
                graph::LiteralValue{v.text, v.datatype.empty() ? "xsd:string" : v.datatype});
          }
        }
        if (!cell.values.empty()) cells.push_back(std::move(cell));
      }
    }
    at(b.line,
       [&] { ops::createComparison(g_, b.value("label"), columns, properties, cells, p_, b.key); });
  }

  void visualization(const Block& b) {
    requireKey(b);
    auto kind = parseChartKind(b.require("chart").value);
    if (!kind) parseError(b.require("chart").line, "unknown chart kind");
    at(b.line, [&] {
      ops::createVisualization(g_, EntityId::resource(b.require("comparison").value), *kind,
                               EntityId::predicate(b.require("series").value),
                               b.require("label").value, p_, b.key);
    });
  }

  void section(const EntityId& articleId, const Block& b, std::size_t position) {
    const Field& type = b.require("type");
    SectionBody body;
    auto target = [&] { return EntityId::resource(b.require("target").value); };
    auto listed = [&] {
      std::vector<EntityId> out;
      for (const auto& key : splitWords(b.value("entities"))) {
        if (key.starts_with(kPredicatePrefix)) {
          out.push_back(EntityId::predicate(key.substr(kPredicatePrefix.size())));
        } else {
          out.push_back(EntityId::resource(key));
        }
      }
      return out;
    };
    if (type.value == "comparison")
      body = ComparisonRef{target()};
    else if (type.value == "visualization")
      body = VisualizationRef{target()};
    else if (type.value == "ontology-table")
      body = OntologyTable{listed()};
    else if (type.value == "resource-table")
      body = EntityTable{EntityTableKind::Resources, listed()};
    else if (type.value == "property-table")
      body = EntityTable{EntityTableKind::Properties, listed()};
    else
      body = NaturalText{type.value, b.value("markdown")};
    std::optional<std::string> key;
    if (!b.key.empty()) key = b.key;
    at(type.line,
       [&] { ops::addSection(g_, articleId, position, b.value("heading"), body, p_, key); });
  }

  GraphState& g_;
  const Provenance& p_;
  std::map<std::string, std::vector<EntityId>> propertyLabels_;
  std::map<std::string, std::vector<EntityId>> papersByTitle_;
  std::map<EntityId, std::vector<EntityId>> contributionsOf_;
};

// --- export ---

class Writer {
 public:
  void field(std::string_view name, std::string_view value) {
    if (value.find('\n') != std::string_view::npos || value == "|") {
      multiline(name, value);
      return;
    }
    out_ += std::string(name) + ": " + std::string(value) + "\n";
  }

  void multiline(std::string_view name, std::string_view value) {
    out_ += std::string(name) + ": |\n";
    std::size_t start = 0;
    while (start <= value.size()) {
      auto end = value.find('\n', start);
      if (end == std::string_view::npos) end = value.size();
      auto line = value.substr(start, end - start);
      if (!line.empty()) out_ += std::string(kIndent) + std::string(line);
      out_ += '\n';
      if (end == value.size()) break;
      start = end + 1;
    }
  }

  void block(std::string_view kind, std::string_view key) {
    out_ += "\n[" + std::string(kind) + (key.empty() ? "" : " " + std::string(key)) + "]\n";
  }

  std::string& out() { return out_; }

 private:
  std::string out_;
};

std::string sectionType(const SectionBody& body) {
  if (const auto* t = std::get_if<NaturalText>(&body)) return t->deoType;
  if (std::holds_alternative<ComparisonRef>(body)) return "comparison";
  if (std::holds_alternative<VisualizationRef>(body)) return "visualization";
  if (std::holds_alternative<OntologyTable>(body)) return "ontology-table";
  return std::get<EntityTable>(body).kind == EntityTableKind::Resources ? "resource-table"
                                                                        : "property-table";
}

std::string keyList(const std::vector<EntityId>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ' ';
    out += id.kind == EntityKind::Predicate ? std::string(kPredicatePrefix) + id.key : id.key;
  }
  return out;
}

template <class T>
void pushUnique(std::vector<T>& list, const T& value) {
  if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(value);
}

}  // namespace

std::vector<std::vector<std::string>> parseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool fieldStarted = false;
  auto endField = [&] {
    row.push_back(std::move(field));
    field.clear();
    fieldStarted = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !fieldStarted) {
      quoted = true;
      fieldStarted = true;
    } else if (c == ',') {
      endField();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      endField();
      rows.push_back(std::move(row));
      row.clear();
    } else {
      field += c;
      fieldStarted = true;
    }
  }
  if (quoted) throw Error(ErrorCode::ParseError, "unterminated quoted CSV field");
  if (fieldStarted || !row.empty() || !field.empty()) {
    endField();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csvField(std::string_view field) {
  bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos ||
               (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!quote) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

EntityId importDocument(GraphState& g, std::string_view text, const Provenance& p) {
  return Importer(g, p).run(parseRaw(text));
}

std::string exportDocument(const GraphView& view, const EntityId& articleId) {
  Article article = readArticle(view, articleId);

  // Gather what the sections reach, in order of first appearance.
  std::vector<EntityId> comparisons, visualizations, papers;
  for (const auto& s : article.sections) {
    if (const auto* c = std::get_if<ComparisonRef>(&s.body)) pushUnique(comparisons, c->comparison);
    if (const auto* v = std::get_if<VisualizationRef>(&s.body)) {
      auto vis = readVisualization(view, v->visualization);
      pushUnique(comparisons, vis.comparison);
      pushUnique(visualizations, vis.id);
    }
    if (const auto* o = std::get_if<OntologyTable>(&s.body)) {
      for (const auto& id : o->entities) {
        if (view.hasClass(id, vocab::kComparison)) pushUnique(comparisons, id);
      }
    }
  }
  std::vector<Comparison> loaded;
  std::set<EntityId> properties, resources;
  for (const auto& id : comparisons) {
    loaded.push_back(readComparison(view, id));
    for (const auto& col : loaded.back().columns) pushUnique(papers, col.paper);
    properties.insert(loaded.back().rows.begin(), loaded.back().rows.end());
    for (const auto& [key, values] : loaded.back().cells) {
      for (const auto& v : values) {
        if (v.kind == EntityKind::Resource) resources.insert(v);
      }
    }
  }
  for (const auto& s : article.sections) {
    if (std::holds_alternative<NaturalText>(s.body)) {
      for (const auto& cited : view.objects(s.id, vocab::kCites)) pushUnique(papers, cited);
    }
  }

  Writer w;
  w.out() += std::string(kMagic) + "\n";
  w.field("title", article.title);
  w.field("key", article.id.key);
  w.field("research-field", article.researchField.key);
  for (const auto* s : view.outgoing(articleId)) {
    const auto& key = s->predicate().key;
    if (key == vocab::kType || key == vocab::kTitle || key == vocab::kResearchField ||
        key == vocab::kHasContribution || s->object().kind != EntityKind::Resource) {
      continue;
    }
    w.field("link", key + " " + s->object().key);
  }

  std::map<std::string, int> labelCount;
  for (const auto& id : properties) ++labelCount[view.label(id)];
  auto describe = [&](const EntityId& id) {
    w.field("label", view.label(id));
    if (auto d = view.literalValue(id, vocab::kDescription)) w.field("description", *d);
    if (auto s = view.literalValue(id, vocab::kSameAs)) w.field("same-as", *s);
  };
  for (const auto& id : properties) {
    w.block("property", id.key);
    describe(id);
  }
  for (const auto& id : resources) {
    w.block("resource", id.key);
    describe(id);
  }
  std::map<std::string, int> titleCount;
  std::map<EntityId, Paper> paperRecords;
  for (const auto& id : papers) {
    auto paper = readPaper(view, id);
    ++titleCount[paper.title];
    w.block("paper", id.key);
    w.field("title", paper.title);
    std::string authors;
    for (const auto& a : paper.authors) authors += (authors.empty() ? "" : "; ") + a;
    if (!authors.empty()) w.field("authors", authors);
    if (!paper.publicationDate.empty()) w.field("date", paper.publicationDate);
    w.field("contributions", keyList(paper.contributions));
    paperRecords[id] = std::move(paper);
  }
  for (const auto& c : loaded) {
    w.block("comparison", c.id.key);
    w.field("label", c.label);
    std::string csv = "Paper";
    for (const auto& prop : c.rows) {
      auto label = view.label(prop);
      bool byLabel = labelCount[label] == 1 && !label.starts_with(kPredicatePrefix);
      csv += "," + csvField(byLabel ? label : std::string(kPredicatePrefix) + prop.key);
    }
    std::map<EntityId, std::size_t> occurrences;
    for (const auto& col : c.columns) {
      const auto& paper = paperRecords[col.paper];
      std::size_t n = occurrences[col.paper]++;
      bool byTitle = titleCount[paper.title] == 1 && n < paper.contributions.size() &&
                     paper.contributions[n] == col.contribution &&
                     !paper.title.starts_with(kResourcePrefix);
      csv += "\n" +
             csvField(byTitle ? paper.title : std::string(kResourcePrefix) + col.contribution.key);
      for (const auto& prop : c.rows) {
        std::string cell;
        auto it = c.cells.find({col.contribution, prop});
        if (it != c.cells.end()) {
          for (const auto& v : it->second) {
            if (!cell.empty()) cell += "; ";
            if (v.kind == EntityKind::Literal) {
              const auto* e = view.entity(v);
              cell += escapeValue(e->literal->value);
              if (e->literal->datatype != vocab::kXsdString) cell += "^^" + e->literal->datatype;
            } else {
              cell += std::string(kResourcePrefix) + v.key;
            }
          }
        }
        csv += "," + csvField(cell);
      }
    }
    w.multiline("csv", csv);
  }
  for (const auto& id : visualizations) {
    auto v = readVisualization(view, id);
    w.block("visualization", id.key);
    w.field("comparison", v.comparison.key);
    w.field("chart", chartKindName(v.chartKind));
    w.field("series", v.seriesProperty.key);
    w.field("label", v.label);
  }
  for (const auto& s : article.sections) {
    w.block("section", s.id.key);
    w.field("type", sectionType(s.body));
    w.field("heading", s.heading);
    if (const auto* c = std::get_if<ComparisonRef>(&s.body)) w.field("target", c->comparison.key);
    if (const auto* v = std::get_if<VisualizationRef>(&s.body)) {
      w.field("target", v->visualization.key);
    }
    if (const auto* o = std::get_if<OntologyTable>(&s.body)) {
      w.field("entities", keyList(o->entities));
    }
    if (const auto* t = std::get_if<EntityTable>(&s.body)) {
      if (!t->entities.empty()) w.field("entities", keyList(t->entities));
    }
    if (const auto* t = std::get_if<NaturalText>(&s.body)) w.multiline("markdown", t->markdown);
  }
  return w.out();
}

}  // namespace smartreview::article
