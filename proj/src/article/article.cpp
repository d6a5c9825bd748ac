#include "smartreview/article/article.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "smartreview/error.hpp"
#include "smartreview/graph/vocabulary.hpp"
#include "smartreview/markdown/markdown.hpp"

namespace smartreview::article {

using graph::EntityKind;
using graph::GraphState;
using graph::GraphView;
using graph::LiteralValue;
using graph::Provenance;
using graph::Statement;
namespace vocab = graph::vocab;

namespace {

EntityId P(std::string_view key) { return EntityId::predicate(std::string(key)); }
EntityId C(std::string_view key) { return EntityId::klass(std::string(key)); }

EntityId literal(GraphState& g, std::string value, std::string_view datatype, const Provenance& p) {
  graph::EntitySpec spec;
  spec.kind = EntityKind::Literal;
  spec.literal = LiteralValue{std::move(value), std::string(datatype)};
  return g.createEntity(spec, p);
}

EntityId integer(GraphState& g, std::size_t n, const Provenance& p) {
  return literal(g, std::to_string(n), vocab::kXsdInteger, p);
}

std::vector<const Statement*> outgoing(const GraphState& g, const EntityId& subject,
                                       std::string_view predicateKey) {
  std::vector<const Statement*> out;
  for (const Statement* s : g.outgoing(subject)) {
    if (s->predicate().key == predicateKey && s->predicate().kind == EntityKind::Predicate) {
      out.push_back(s);
    }
  }
  return out;
}

bool hasClass(const GraphState& g, const EntityId& subject, std::string_view classKey) {
  for (const Statement* s : outgoing(g, subject, vocab::kType)) {
    if (s->object() == C(classKey)) return true;
  }
  return false;
}

void removeAll(GraphState& g, const std::vector<const Statement*>& statements,
               const Provenance& p) {
  std::vector<graph::StatementId> ids;
  for (const Statement* s : statements) ids.push_back(s->id);
  for (auto id : ids) g.removeStatement(id, p);
}

// Makes the subject's statements for `predicateKey` equal to `objects`, in
// order. Leaves them untouched when they already match.
void replaceObjects(GraphState& g, const EntityId& subject, std::string_view predicateKey,
                    const std::vector<EntityId>& objects, const Provenance& p) {
  auto current = outgoing(g, subject, predicateKey);
  std::vector<EntityId> existing;
  for (const Statement* s : current) existing.push_back(s->object());
  if (existing == objects) return;
  removeAll(g, current, p);
  for (const auto& o : objects) g.addStatement(subject, P(predicateKey), o, p);
}

std::optional<std::size_t> parseIndex(const std::string& text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// --- head-state lookups used by the write operations ---

void requireArticle(const GraphState& g, const EntityId& articleId) {
  if (!g.hasEntity(articleId) || !hasClass(g, articleId, vocab::kSmartReview)) {
    throw Error(ErrorCode::UnknownArticle, "unknown article " + articleId.key);
  }
}

EntityId contributionOf(const GraphState& g, const EntityId& articleId) {
  for (const Statement* s : outgoing(g, articleId, vocab::kHasContribution)) {
    if (hasClass(g, s->object(), vocab::kContribution)) return s->object();
  }
  throw Error(ErrorCode::UnknownArticle, "article " + articleId.key + " has no contribution node");
}

std::string literalText(const GraphState& g, const EntityId& id) {
  const graph::Entity* e = g.findEntity(id);
  return e && e->literal ? e->literal->value : std::string();
}

std::vector<EntityId> sectionsInOrder(const GraphState& g, const EntityId& contribution) {
  std::vector<std::pair<std::size_t, EntityId>> keyed;
  for (const Statement* s : outgoing(g, contribution, vocab::kHasSection)) {
    std::size_t order = SIZE_MAX;
    for (const Statement* o : outgoing(g, s->object(), vocab::kSectionOrder)) {
      order = parseIndex(literalText(g, o->object())).value_or(SIZE_MAX);
    }
    keyed.emplace_back(order, s->object());
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<EntityId> out;
  for (auto& [order, id] : keyed) {
    if (out.empty() || out.back() != id) out.push_back(id);
  }
  return out;
}

void renumber(GraphState& g, const std::vector<EntityId>& sections, const Provenance& p) {
  for (std::size_t i = 0; i < sections.size(); ++i) {
    replaceObjects(g, sections[i], vocab::kSectionOrder, {integer(g, i, p)}, p);
  }
}

std::string_view sectionClass(const SectionBody& body) {
  struct Visitor {
    std::string_view operator()(const NaturalText& t) const { return t.deoType; }
    std::string_view operator()(const ComparisonRef&) const { return vocab::kComparisonSection; }
    std::string_view operator()(const VisualizationRef&) const {
      return vocab::kVisualizationSection;
    }
    std::string_view operator()(const OntologyTable&) const { return vocab::kOntologyTableSection; }
    std::string_view operator()(const EntityTable& t) const {
      return t.kind == EntityTableKind::Resources ? vocab::kResourceTableSection
                                                  : vocab::kPropertyTableSection;
    }
  };
  return std::visit(Visitor{}, body);
}

void requireTyped(const GraphState& g, const EntityId& id, std::string_view klass) {
  if (!g.hasEntity(id) || !hasClass(g, id, klass)) {
    throw Error(ErrorCode::DanglingReference,
                "reference to " + graph::toString(id) + " which is not a " + std::string(klass));
  }
}

void validateBody(const GraphState& g, const SectionBody& body) {
  if (const auto* text = std::get_if<NaturalText>(&body)) {
    if (!vocab::isDeoClass(text->deoType)) {
      throw Error(ErrorCode::UnknownDeoType, "unknown DEO type '" + text->deoType + "'");
    }
  } else if (const auto* c = std::get_if<ComparisonRef>(&body)) {
    requireTyped(g, c->comparison, vocab::kComparison);
  } else if (const auto* v = std::get_if<VisualizationRef>(&body)) {
    requireTyped(g, v->visualization, vocab::kVisualization);
  } else {
    const auto& listed = std::holds_alternative<OntologyTable>(body)
                             ? std::get<OntologyTable>(body).entities
                             : std::get<EntityTable>(body).entities;
    for (const auto& id : listed) {
      if (!g.hasEntity(id) || id.kind == EntityKind::Literal) {
        throw Error(ErrorCode::DanglingReference, "unknown listed entity " + graph::toString(id));
      }
    }
  }
}

// Resolved citation targets: keys naming existing paper records.
std::vector<EntityId> citedPapers(const GraphState& g, const std::string& markdown) {
  std::vector<EntityId> out;
  for (const auto& key : markdown::extractCitations(markdown::parse(markdown))) {
    EntityId id = EntityId::resource(key);
    if (g.hasEntity(id) && hasClass(g, id, vocab::kPaper)) out.push_back(id);
  }
  return out;
}

// Writes every statement of the section except its order.
void writeSection(GraphState& g, const EntityId& section, const std::string& heading,
                  const SectionBody& body, const Provenance& p) {
  replaceObjects(g, section, vocab::kType, {C(sectionClass(body))}, p);
  replaceObjects(g, section, vocab::kSectionHeading, {literal(g, heading, vocab::kXsdString, p)},
                 p);
  std::vector<EntityId> markdownText, cites, comparison, visualization, listed;
  if (const auto* text = std::get_if<NaturalText>(&body)) {
    markdownText.push_back(literal(g, text->markdown, vocab::kXsdString, p));
    cites = citedPapers(g, text->markdown);
  } else if (const auto* c = std::get_if<ComparisonRef>(&body)) {
    comparison.push_back(c->comparison);
  } else if (const auto* v = std::get_if<VisualizationRef>(&body)) {
    visualization.push_back(v->visualization);
  } else if (const auto* o = std::get_if<OntologyTable>(&body)) {
    listed = o->entities;
  } else {
    listed = std::get<EntityTable>(body).entities;
  }
  replaceObjects(g, section, vocab::kHasMarkdown, markdownText, p);
  replaceObjects(g, section, vocab::kCites, cites, p);
  replaceObjects(g, section, vocab::kHasComparison, comparison, p);
  replaceObjects(g, section, vocab::kHasVisualization, visualization, p);
  replaceObjects(g, section, vocab::kListsEntity, listed, p);
}

std::vector<EntityId> indexedChildren(const GraphState& g, const EntityId& parent,
                                      std::string_view link, std::string_view indexKey) {
  std::vector<std::pair<std::size_t, EntityId>> keyed;
  for (const Statement* s : outgoing(g, parent, link)) {
    std::size_t index = SIZE_MAX;
    for (const Statement* i : outgoing(g, s->object(), indexKey)) {
      index = parseIndex(literalText(g, i->object())).value_or(SIZE_MAX);
    }
    keyed.emplace_back(index, s->object());
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<EntityId> out;
  for (auto& [i, id] : keyed) out.push_back(id);
  return out;
}

struct DeclaredShape {
  std::vector<EntityId> contributions;
  std::vector<EntityId> properties;
};

DeclaredShape declaredShape(const GraphState& g, const EntityId& comparisonId) {
  if (!g.hasEntity(comparisonId) || !hasClass(g, comparisonId, vocab::kComparison)) {
    throw Error(ErrorCode::UnknownComparison, "unknown comparison " + comparisonId.key);
  }
  DeclaredShape shape;
  for (const auto& col : indexedChildren(g, comparisonId, vocab::kHasColumn, vocab::kColumnIndex)) {
    for (const Statement* s : outgoing(g, col, vocab::kColumnContribution)) {
      shape.contributions.push_back(s->object());
    }
  }
  for (const auto& row : indexedChildren(g, comparisonId, vocab::kHasRow, vocab::kRowIndex)) {
    for (const Statement* s : outgoing(g, row, vocab::kRowProperty)) {
      shape.properties.push_back(s->object());
    }
  }
  return shape;
}

EntityId cellValue(GraphState& g, const CellValue& value, const Provenance& p) {
  if (const auto* id = std::get_if<EntityId>(&value)) {
    if (!g.hasEntity(*id)) {
      throw Error(ErrorCode::DanglingReference, "unknown cell value " + graph::toString(*id));
    }
    return *id;
  }
  const auto& lit = std::get<LiteralValue>(value);
  return literal(g, lit.value, lit.datatype.empty() ? vocab::kXsdString : lit.datatype, p);
}

void writeCell(GraphState& g, const EntityId& contribution, const EntityId& property,
               const std::vector<CellValue>& values, const Provenance& p) {
  std::vector<EntityId> objects;
  for (const auto& v : values) objects.push_back(cellValue(g, v, p));
  replaceObjects(g, contribution, property.key, objects, p);
}

std::string dateDatatype(const std::string& date) {
  bool year = date.size() == 4 && std::all_of(date.begin(), date.end(), ::isdigit);
  return year ? "xsd:gYear" : "xsd:date";
}

// --- view readers ---

std::vector<EntityId> indexedChildren(const GraphView& view, const EntityId& parent,
                                      std::string_view link, std::string_view indexKey) {
  std::vector<std::pair<std::size_t, EntityId>> keyed;
  for (const auto& child : view.objects(parent, link)) {
    std::size_t index =
        parseIndex(view.literalValue(child, indexKey).value_or("")).value_or(SIZE_MAX);
    keyed.emplace_back(index, child);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<EntityId> out;
  for (auto& [i, id] : keyed) {
    if (out.empty() || out.back() != id) out.push_back(id);
  }
  return out;
}

Section readSection(const GraphView& view, const EntityId& id) {
  Section section;
  section.id = id;
  section.heading = view.literalValue(id, vocab::kSectionHeading).value_or("");
  for (const auto& klass : view.classesOf(id)) {
    const auto& key = klass.key;
    if (vocab::isDeoClass(key)) {
      section.body = NaturalText{key, view.literalValue(id, vocab::kHasMarkdown).value_or("")};
      return section;
    }
    if (key == vocab::kComparisonSection) {
      auto target = view.object(id, vocab::kHasComparison);
      if (target) section.body = ComparisonRef{*target};
      if (target) return section;
    } else if (key == vocab::kVisualizationSection) {
      auto target = view.object(id, vocab::kHasVisualization);
      if (target) section.body = VisualizationRef{*target};
      if (target) return section;
    } else if (key == vocab::kOntologyTableSection) {
      section.body = OntologyTable{view.objects(id, vocab::kListsEntity)};
      return section;
    } else if (key == vocab::kResourceTableSection || key == vocab::kPropertyTableSection) {
      auto kind = key == vocab::kResourceTableSection ? EntityTableKind::Resources
                                                      : EntityTableKind::Properties;
      section.body = EntityTable{kind, view.objects(id, vocab::kListsEntity)};
      return section;
    }
  }
  throw Error(ErrorCode::UnknownSection, "section " + id.key + " has no recognizable type");
}

bool labelLess(const GraphView& view, const EntityId& a, const EntityId& b) {
  auto la = view.label(a);
  auto lb = view.label(b);
  if (la != lb) return la < lb;
  return a < b;
}

}  // namespace

std::string_view chartKindName(ChartKind kind) {
  switch (kind) {
    case ChartKind::Table:
      return "Table";
    case ChartKind::BarChart:
      return "BarChart";
    case ChartKind::LineChart:
      return "LineChart";
  }
  return "Table";
}

std::optional<ChartKind> parseChartKind(std::string_view name) {
  for (auto kind : {ChartKind::Table, ChartKind::BarChart, ChartKind::LineChart}) {
    if (chartKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

namespace ops {

Article createArticle(GraphState& g, const std::string& title, const EntityId& researchField,
                      const Provenance& p, std::optional<std::string> key) {
  if (!g.hasEntity(researchField) || researchField.kind != EntityKind::Resource) {
    throw Error(ErrorCode::UnknownEntity, "unknown research field " + researchField.key);
  }
  if (title.empty()) throw Error(ErrorCode::InvalidArgument, "article title must not be empty");
  graph::EntitySpec spec{EntityKind::Resource, title, {C(vocab::kSmartReview)}, std::nullopt, key};
  EntityId id = g.createEntity(spec, p);
  g.addStatement(id, P(vocab::kTitle), literal(g, title, vocab::kXsdString, p), p);
  g.addStatement(id, P(vocab::kResearchField), researchField, p);
  EntityId contribution = g.createEntity({EntityKind::Resource,
                                          "Contribution of " + title,
                                          {C(vocab::kContribution)},
                                          std::nullopt,
                                          std::nullopt},
                                         p);
  g.addStatement(id, P(vocab::kHasContribution), contribution, p);
  return Article{id, title, researchField, contribution, {}};
}

Section addSection(GraphState& g, const EntityId& articleId, std::size_t position,
                   const std::string& heading, const SectionBody& body, const Provenance& p,
                   std::optional<std::string> key) {
  requireArticle(g, articleId);
  EntityId contribution = contributionOf(g, articleId);
  auto sections = sectionsInOrder(g, contribution);
  if (position > sections.size()) {
    throw Error(ErrorCode::InvalidPosition, "position " + std::to_string(position) +
                                                " outside [0, " + std::to_string(sections.size()) +
                                                "]");
  }
  validateBody(g, body);
  graph::EntitySpec spec{
      EntityKind::Resource, heading.empty() ? "Section" : heading, {}, std::nullopt, key};
  EntityId section = g.createEntity(spec, p);
  writeSection(g, section, heading, body, p);
  g.addStatement(contribution, P(vocab::kHasSection), section, p);
  sections.insert(sections.begin() + static_cast<long>(position), section);
  renumber(g, sections, p);
  return Section{section, heading, body};
}

std::optional<EntityId> articleOfSection(const GraphState& g, const EntityId& sectionId) {
  EntityId hasSection = P(vocab::kHasSection);
  for (const auto& link : g.getStatements({std::nullopt, hasSection, sectionId})) {
    for (const auto& owner :
         g.getStatements({std::nullopt, P(vocab::kHasContribution), link.subject()})) {
      if (hasClass(g, owner.subject(), vocab::kSmartReview)) return owner.subject();
    }
  }
  return std::nullopt;
}

Section updateSection(GraphState& g, const EntityId& sectionId,
                      const std::optional<std::string>& heading,
                      const std::optional<SectionBody>& body, const Provenance& p) {
  if (!articleOfSection(g, sectionId)) {
    throw Error(ErrorCode::UnknownSection, "unknown section " + sectionId.key);
  }
  std::vector<Statement> own;
  for (const Statement* s : g.outgoing(sectionId)) own.push_back(*s);
  Section current = readSection(g.view(std::move(own)), sectionId);
  Section next{sectionId, heading.value_or(current.heading), body.value_or(current.body)};
  if (body) validateBody(g, *body);
  writeSection(g, sectionId, next.heading, next.body, p);
  return next;
}

void reorderSections(GraphState& g, const EntityId& articleId, const std::vector<EntityId>& order,
                     const Provenance& p) {
  requireArticle(g, articleId);
  auto current = sectionsInOrder(g, contributionOf(g, articleId));
  for (const auto& id : order) {
    if (std::find(current.begin(), current.end(), id) == current.end()) {
      throw Error(ErrorCode::UnknownSection, "section " + id.key + " is not in the article");
    }
  }
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  auto expected = current;
  std::sort(expected.begin(), expected.end());
  if (sorted != expected) {
    throw Error(ErrorCode::InvalidPosition, "new order must list every section exactly once");
  }
  renumber(g, order, p);
}

void deleteSection(GraphState& g, const EntityId& sectionId, const Provenance& p) {
  auto articleId = articleOfSection(g, sectionId);
  if (!articleId) throw Error(ErrorCode::UnknownSection, "unknown section " + sectionId.key);
  EntityId contribution = contributionOf(g, *articleId);
  std::vector<const Statement*> links;
  for (const Statement* s : outgoing(g, contribution, vocab::kHasSection)) {
    if (s->object() == sectionId) links.push_back(s);
  }
  removeAll(g, links, p);
  removeAll(g, g.outgoing(sectionId), p);
  renumber(g, sectionsInOrder(g, contribution), p);
}

Paper createPaper(GraphState& g, const PaperInput& input, const Provenance& p) {
  if (input.title.empty()) throw Error(ErrorCode::InvalidArgument, "paper title must not be empty");
  EntityId id = g.createEntity(
      {EntityKind::Resource, input.title, {C(vocab::kPaper)}, std::nullopt, input.key}, p);
  g.addStatement(id, P(vocab::kTitle), literal(g, input.title, vocab::kXsdString, p), p);
  for (const auto& author : input.authors) {
    g.addStatement(id, P(vocab::kHasAuthor), literal(g, author, vocab::kXsdString, p), p);
  }
  if (!input.publicationDate.empty()) {
    g.addStatement(id, P(vocab::kPublicationDate),
                   literal(g, input.publicationDate, dateDatatype(input.publicationDate), p), p);
  }
  Paper paper{id, input.title, input.authors, input.publicationDate, {}};
  std::vector<std::optional<std::string>> keys(input.contributionKeys.begin(),
                                               input.contributionKeys.end());
  if (keys.empty()) keys.emplace_back();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::string label = "Contribution " + std::to_string(i + 1) + " of " + input.title;
    EntityId c = g.createEntity(
        {EntityKind::Resource, label, {C(vocab::kContribution)}, std::nullopt, keys[i]}, p);
    g.addStatement(id, P(vocab::kHasContribution), c, p);
    paper.contributions.push_back(c);
  }
  return paper;
}

Comparison createComparison(GraphState& g, const std::string& label,
                            const std::vector<ComparisonColumn>& columns,
                            const std::vector<EntityId>& properties,
                            const std::vector<CellInput>& cells, const Provenance& p,
                            std::optional<std::string> key) {
  std::set<EntityId> seenProperties;
  for (const auto& prop : properties) {
    if (!g.hasEntity(prop) || prop.kind != EntityKind::Predicate) {
      throw Error(ErrorCode::DanglingReference, "unknown property " + graph::toString(prop));
    }
    if (!seenProperties.insert(prop).second) {
      throw Error(ErrorCode::DuplicateProperty, "property " + prop.key + " listed twice");
    }
  }
  std::set<EntityId> seenContributions;
  for (const auto& col : columns) {
    requireTyped(g, col.paper, vocab::kPaper);
    requireTyped(g, col.contribution, vocab::kContribution);
    bool linked = false;
    for (const Statement* s : outgoing(g, col.paper, vocab::kHasContribution)) {
      linked = linked || s->object() == col.contribution;
    }
    if (!linked) {
      throw Error(ErrorCode::DanglingReference,
                  col.contribution.key + " is not a contribution of " + col.paper.key);
    }
    if (!seenContributions.insert(col.contribution).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "contribution " + col.contribution.key + " appears in two columns");
    }
  }
  for (const auto& cell : cells) {
    if (!seenContributions.count(cell.contribution) || !seenProperties.count(cell.property)) {
      throw Error(ErrorCode::DanglingReference, "cell (" + cell.contribution.key + ", " +
                                                    cell.property.key +
                                                    ") is outside the declared rows and columns");
    }
  }

  Comparison result;
  result.label = label.empty() ? "Comparison" : label;
  result.id = g.createEntity(
      {EntityKind::Resource, result.label, {C(vocab::kComparison)}, std::nullopt, key}, p);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    EntityId col = g.createEntity({EntityKind::Resource,
                                   "Column " + std::to_string(i + 1) + " of " + result.label,
                                   {C(vocab::kComparisonColumn)},
                                   std::nullopt,
                                   std::nullopt},
                                  p);
    g.addStatement(col, P(vocab::kColumnIndex), integer(g, i, p), p);
    g.addStatement(col, P(vocab::kColumnPaper), columns[i].paper, p);
    g.addStatement(col, P(vocab::kColumnContribution), columns[i].contribution, p);
    g.addStatement(result.id, P(vocab::kHasColumn), col, p);
  }
  for (std::size_t i = 0; i < properties.size(); ++i) {
    EntityId row = g.createEntity({EntityKind::Resource,
                                   "Row " + std::to_string(i + 1) + " of " + result.label,
                                   {C(vocab::kComparisonRow)},
                                   std::nullopt,
                                   std::nullopt},
                                  p);
    g.addStatement(row, P(vocab::kRowIndex), integer(g, i, p), p);
    g.addStatement(row, P(vocab::kRowProperty), properties[i], p);
    g.addStatement(result.id, P(vocab::kHasRow), row, p);
  }
  for (const auto& cell : cells) writeCell(g, cell.contribution, cell.property, cell.values, p);
  result.columns = columns;
  result.rows = properties;
  for (const auto& col : columns) {
    for (const auto& prop : properties) {
      std::vector<EntityId> values;
      for (const Statement* s : outgoing(g, col.contribution, prop.key)) {
        values.push_back(s->object());
      }
      if (!values.empty()) result.cells[{col.contribution, prop}] = std::move(values);
    }
  }
  return result;
}

void setCell(GraphState& g, const EntityId& comparisonId, const EntityId& contribution,
             const EntityId& property, const std::vector<CellValue>& values, const Provenance& p) {
  auto shape = declaredShape(g, comparisonId);
  auto has = [](const std::vector<EntityId>& list, const EntityId& id) {
    return std::find(list.begin(), list.end(), id) != list.end();
  };
  if (!has(shape.contributions, contribution) || !has(shape.properties, property)) {
    throw Error(ErrorCode::UndeclaredRowOrColumn, "(" + contribution.key + ", " + property.key +
                                                      ") is not a declared cell of " +
                                                      comparisonId.key);
  }
  writeCell(g, contribution, property, values, p);
}

Visualization createVisualization(GraphState& g, const EntityId& comparisonId, ChartKind kind,
                                  const EntityId& seriesProperty, const std::string& label,
                                  const Provenance& p, std::optional<std::string> key) {
  auto shape = declaredShape(g, comparisonId);
  if (std::find(shape.properties.begin(), shape.properties.end(), seriesProperty) ==
      shape.properties.end()) {
    throw Error(ErrorCode::UndeclaredRowOrColumn,
                seriesProperty.key + " is not a row of " + comparisonId.key);
  }
  if (label.empty()) throw Error(ErrorCode::InvalidArgument, "visualization label is required");
  EntityId id = g.createEntity(
      {EntityKind::Resource, label, {C(vocab::kVisualization)}, std::nullopt, key}, p);
  g.addStatement(id, P(vocab::kVisualizesComparison), comparisonId, p);
  g.addStatement(id, P(vocab::kChartKind),
                 literal(g, std::string(chartKindName(kind)), vocab::kXsdString, p), p);
  g.addStatement(id, P(vocab::kSeriesProperty), seriesProperty, p);
  return Visualization{id, comparisonId, kind, seriesProperty, label};
}

void describeEntity(GraphState& g, const EntityId& entity, const std::string& description,
                    const std::optional<std::string>& sameAs, const Provenance& p) {
  if (!g.hasEntity(entity) || entity.kind == EntityKind::Literal) {
    throw Error(ErrorCode::UnknownEntity, "unknown entity " + graph::toString(entity));
  }
  replaceObjects(g, entity, vocab::kDescription, {literal(g, description, vocab::kXsdString, p)},
                 p);
  if (sameAs) {
    replaceObjects(g, entity, vocab::kSameAs, {literal(g, *sameAs, vocab::kXsdAnyUri, p)}, p);
  }
}

void linkArticle(GraphState& g, const EntityId& articleId, const EntityId& predicate,
                 const EntityId& object, const Provenance& p) {
  requireArticle(g, articleId);
  g.addStatement(articleId, predicate, object, p);
}

std::vector<Statement> contextStatements(const GraphState& g, const std::vector<Statement>& owned) {
  std::set<EntityId> referenced;
  std::set<EntityId> subjects;
  for (const auto& s : owned) {
    subjects.insert(s.subject());
    referenced.insert(s.predicate());
    referenced.insert(s.object());
  }
  std::vector<Statement> out;
  for (const auto& id : referenced) {
    if (id.kind == EntityKind::Literal || subjects.count(id)) continue;
    for (const Statement* s : g.outgoing(id)) {
      const auto& key = s->predicate().key;
      if (key == vocab::kDescription || key == vocab::kSameAs) out.push_back(*s);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Statement& a, const Statement& b) { return a.id < b.id; });
  return out;
}

GraphView articleView(const GraphState& g, const EntityId& articleId) {
  requireArticle(g, articleId);
  auto statements = g.traverseSubgraph(articleId);
  auto context = contextStatements(g, statements);
  statements.insert(statements.end(), context.begin(), context.end());
  std::sort(statements.begin(), statements.end(),
            [](const Statement& a, const Statement& b) { return a.id < b.id; });
  return g.view(std::move(statements));
}

}  // namespace ops

std::vector<EntityId> listArticles(const GraphView& view) {
  auto out = view.subjects(vocab::kType, C(vocab::kSmartReview));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Article readArticle(const GraphView& view, const EntityId& articleId) {
  if (!view.hasClass(articleId, vocab::kSmartReview)) {
    throw Error(ErrorCode::UnknownArticle, "unknown article " + articleId.key);
  }
  Article article;
  article.id = articleId;
  article.title = view.literalValue(articleId, vocab::kTitle).value_or(view.label(articleId));
  article.researchField = view.object(articleId, vocab::kResearchField).value_or(EntityId{});
  for (const auto& c : view.objects(articleId, vocab::kHasContribution)) {
    if (view.hasClass(c, vocab::kContribution)) {
      article.contribution = c;
      break;
    }
  }
  std::vector<std::pair<std::size_t, EntityId>> keyed;
  for (const auto& s : view.objects(article.contribution, vocab::kHasSection)) {
    auto order = parseIndex(view.literalValue(s, vocab::kSectionOrder).value_or(""));
    keyed.emplace_back(order.value_or(SIZE_MAX), s);
  }
  std::sort(keyed.begin(), keyed.end());
  for (const auto& [order, id] : keyed) {
    if (!article.sections.empty() && article.sections.back().id == id) continue;
    article.sections.push_back(readSection(view, id));
  }
  return article;
}

Comparison readComparison(const GraphView& view, const EntityId& comparisonId) {
  if (!view.hasClass(comparisonId, vocab::kComparison)) {
    throw Error(ErrorCode::UnknownComparison, "unknown comparison " + comparisonId.key);
  }
  Comparison c;
  c.id = comparisonId;
  c.label = view.label(comparisonId);
  for (const auto& col :
       indexedChildren(view, comparisonId, vocab::kHasColumn, vocab::kColumnIndex)) {
    auto paper = view.object(col, vocab::kColumnPaper);
    auto contribution = view.object(col, vocab::kColumnContribution);
    if (paper && contribution) c.columns.push_back({*paper, *contribution});
  }
  for (const auto& row : indexedChildren(view, comparisonId, vocab::kHasRow, vocab::kRowIndex)) {
    if (auto prop = view.object(row, vocab::kRowProperty)) c.rows.push_back(*prop);
  }
  for (const auto& col : c.columns) {
    for (const auto& prop : c.rows) {
      auto values = view.objects(col.contribution, prop.key);
      if (!values.empty()) c.cells[{col.contribution, prop}] = std::move(values);
    }
  }
  return c;
}

Paper readPaper(const GraphView& view, const EntityId& paperId) {
  if (!view.hasClass(paperId, vocab::kPaper)) {
    throw Error(ErrorCode::UnknownEntity, "unknown paper " + paperId.key);
  }
  Paper paper;
  paper.id = paperId;
  paper.title = view.literalValue(paperId, vocab::kTitle).value_or(view.label(paperId));
  for (const auto& a : view.objects(paperId, vocab::kHasAuthor)) {
    paper.authors.push_back(view.literalOf(a).value_or(""));
  }
  paper.publicationDate = view.literalValue(paperId, vocab::kPublicationDate).value_or("");
  paper.contributions = view.objects(paperId, vocab::kHasContribution);
  return paper;
}

Visualization readVisualization(const GraphView& view, const EntityId& visualizationId) {
  if (!view.hasClass(visualizationId, vocab::kVisualization)) {
    throw Error(ErrorCode::UnknownEntity, "unknown visualization " + visualizationId.key);
  }
  Visualization v;
  v.id = visualizationId;
  v.label = view.label(visualizationId);
  v.comparison = view.object(visualizationId, vocab::kVisualizesComparison).value_or(EntityId{});
  v.chartKind = parseChartKind(view.literalValue(visualizationId, vocab::kChartKind).value_or(""))
                    .value_or(ChartKind::Table);
  v.seriesProperty = view.object(visualizationId, vocab::kSeriesProperty).value_or(EntityId{});
  return v;
}

std::vector<OntologyRow> ontologyRows(const GraphView& view, const std::vector<EntityId>& listed) {
  std::set<EntityId> entities;
  for (const auto& id : listed) {
    if (!view.hasClass(id, vocab::kComparison)) {
      entities.insert(id);
      continue;
    }
    auto c = readComparison(view, id);
    entities.insert(c.rows.begin(), c.rows.end());
    for (const auto& [key, values] : c.cells) {
      for (const auto& v : values) {
        if (v.kind == EntityKind::Resource) entities.insert(v);
      }
    }
  }
  std::vector<EntityId> ordered(entities.begin(), entities.end());
  std::sort(ordered.begin(), ordered.end(),
            [&](const EntityId& a, const EntityId& b) { return labelLess(view, a, b); });
  std::vector<OntologyRow> rows;
  for (const auto& id : ordered) {
    rows.push_back({id, view.label(id), view.literalValue(id, vocab::kDescription).value_or(""),
                    view.literalValue(id, vocab::kSameAs)});
  }
  return rows;
}

std::vector<OntologyRow> buildOntologyTable(const GraphView& view,
                                            const std::vector<EntityId>& comparisonIds) {
  for (const auto& id : comparisonIds) {
    if (!view.hasClass(id, vocab::kComparison)) {
      throw Error(ErrorCode::UnknownComparison, "unknown comparison " + id.key);
    }
  }
  return ontologyRows(view, comparisonIds);
}

UsedEntities collectUsedEntities(const GraphView& view, const EntityId& articleId) {
  if (!view.hasClass(articleId, vocab::kSmartReview)) {
    throw Error(ErrorCode::UnknownArticle, "unknown article " + articleId.key);
  }
  std::set<EntityId> properties, resources;
  for (const auto& s : graph::traverseSubgraph(view, articleId)) {
    if (vocab::isStructuralPredicate(s.predicate().key)) continue;
    properties.insert(s.predicate());
    if (s.object().kind == EntityKind::Resource) resources.insert(s.object());
  }
  UsedEntities used{{properties.begin(), properties.end()}, {resources.begin(), resources.end()}};
  auto byLabel = [&](const EntityId& a, const EntityId& b) { return labelLess(view, a, b); };
  std::sort(used.properties.begin(), used.properties.end(), byLabel);
  std::sort(used.resources.begin(), used.resources.end(), byLabel);
  return used;
}

// --- Articles ---

Article Articles::createArticle(const std::string& title, const EntityId& researchField,
                                const Provenance& p) {
  return store_.write(
      [&](GraphState& g) { return ops::createArticle(g, title, researchField, p); });
}

Section Articles::addSection(const EntityId& articleId, std::size_t position,
                             const std::string& heading, const SectionBody& body,
                             const Provenance& p) {
  return store_.write(
      [&](GraphState& g) { return ops::addSection(g, articleId, position, heading, body, p); });
}

Section Articles::updateSection(const EntityId& sectionId,
                                const std::optional<std::string>& heading,
                                const std::optional<SectionBody>& body, const Provenance& p) {
  return store_.write(
      [&](GraphState& g) { return ops::updateSection(g, sectionId, heading, body, p); });
}

Article Articles::reorderSections(const EntityId& articleId, const std::vector<EntityId>& order,
                                  const Provenance& p) {
  store_.write([&](GraphState& g) { ops::reorderSections(g, articleId, order, p); });
  return article(articleId);
}

Article Articles::deleteSection(const EntityId& sectionId, const Provenance& p) {
  auto articleId = store_.write([&](GraphState& g) {
    auto owner = ops::articleOfSection(g, sectionId);
    ops::deleteSection(g, sectionId, p);
    return *owner;
  });
  return article(articleId);
}

Paper Articles::createPaper(const PaperInput& input, const Provenance& p) {
  return store_.write([&](GraphState& g) { return ops::createPaper(g, input, p); });
}

Comparison Articles::createComparison(const std::string& label,
                                      const std::vector<ComparisonColumn>& columns,
                                      const std::vector<EntityId>& properties,
                                      const std::vector<CellInput>& cells, const Provenance& p) {
  return store_.write([&](GraphState& g) {
    return ops::createComparison(g, label, columns, properties, cells, p);
  });
}

Comparison Articles::setCell(const EntityId& comparisonId, const EntityId& contribution,
                             const EntityId& property, const std::vector<CellValue>& values,
                             const Provenance& p) {
  store_.write(
      [&](GraphState& g) { ops::setCell(g, comparisonId, contribution, property, values, p); });
  return comparison(comparisonId);
}

Visualization Articles::createVisualization(const EntityId& comparisonId, ChartKind kind,
                                            const EntityId& seriesProperty,
                                            const std::string& label, const Provenance& p) {
  return store_.write([&](GraphState& g) {
    return ops::createVisualization(g, comparisonId, kind, seriesProperty, label, p);
  });
}

Article Articles::article(const EntityId& articleId) const {
  return readArticle(articleView(articleId), articleId);
}

Comparison Articles::comparison(const EntityId& comparisonId) const {
  return store_.read([&](const GraphState& g) {
    if (!g.hasEntity(comparisonId)) {
      throw Error(ErrorCode::UnknownComparison, "unknown comparison " + comparisonId.key);
    }
    auto statements = g.traverseSubgraph(comparisonId);
    return readComparison(g.view(std::move(statements)), comparisonId);
  });
}

std::vector<OntologyRow> Articles::ontologyTable(const std::vector<EntityId>& comparisonIds) const {
  return buildOntologyTable(store_.headView(), comparisonIds);
}

UsedEntities Articles::usedEntities(const EntityId& articleId) const {
  return collectUsedEntities(articleView(articleId), articleId);
}

GraphView Articles::articleView(const EntityId& articleId) const {
  return store_.read([&](const GraphState& g) { return ops::articleView(g, articleId); });
}

}  // namespace smartreview::article
