#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "smartreview/graph/graph_view.hpp"
#include "smartreview/graph/store.hpp"

// The review document model and its encoding as statements.
//
//   article  a SmartReview ; Title "..." ; P30 field ; P31 contribution
//   contribution HasSection section            (one per section)
//   section  a <DEO class | structural class> ; SectionOrder n ; SectionHeading "..."
//            HasMarkdown "..." ; Cites paper   (natural text)
//            HasComparison c | HasVisualization v | ListsEntity e ...
//   comparison a Comparison ; HasColumn col ; HasRow row
//   col ColumnIndex n ; ColumnPaper paper ; ColumnContribution contribution
//   row RowIndex n ; RowProperty property
//   cells are plain statements (contribution, property, value)
namespace smartreview::article {

using graph::EntityId;

struct NaturalText {
  std::string deoType;  // class key from the DEO list, e.g. "Introduction"
  std::string markdown;
  bool operator==(const NaturalText&) const = default;
};

struct ComparisonRef {
  EntityId comparison;
  bool operator==(const ComparisonRef&) const = default;
};

struct VisualizationRef {
  EntityId visualization;
  bool operator==(const VisualizationRef&) const = default;
};

// Lists properties and resources with their descriptions. Comparison ids in
// the list stand for every entity used by that comparison.
struct OntologyTable {
  std::vector<EntityId> entities;
  bool operator==(const OntologyTable&) const = default;
};

enum class EntityTableKind { Resources, Properties };

// An empty entity list means "everything the article uses".
struct EntityTable {
  EntityTableKind kind = EntityTableKind::Resources;
  std::vector<EntityId> entities;
  bool operator==(const EntityTable&) const = default;
};

using SectionBody =
    std::variant<NaturalText, ComparisonRef, VisualizationRef, OntologyTable, EntityTable>;

struct Section {
  EntityId id;
  std::string heading;
  SectionBody body;
  bool operator==(const Section&) const = default;
};

struct Article {
  EntityId id;
  std::string title;
  EntityId researchField;
  EntityId contribution;
  std::vector<Section> sections;
};

struct ComparisonColumn {
  EntityId paper;
  EntityId contribution;
  bool operator==(const ComparisonColumn&) const = default;
};

using CellKey = std::pair<EntityId, EntityId>;  // (contribution, property)

struct Comparison {
  EntityId id;
  std::string label;
  std::vector<ComparisonColumn> columns;
  std::vector<EntityId> rows;                      // properties
  std::map<CellKey, std::vector<EntityId>> cells;  // absent key = empty cell
};

struct Paper {
  EntityId id;
  std::string title;
  std::vector<std::string> authors;
  std::string publicationDate;  // ISO date or year
  std::vector<EntityId> contributions;
};

enum class ChartKind { Table, BarChart, LineChart };
std::string_view chartKindName(ChartKind kind);
std::optional<ChartKind> parseChartKind(std::string_view name);

struct Visualization {
  EntityId id;
  EntityId comparison;
  ChartKind chartKind = ChartKind::Table;
  EntityId seriesProperty;
  std::string label;
};

struct OntologyRow {
  EntityId entity;
  std::string label;
  std::string description;  // empty when the graph has none
  std::optional<std::string> externalUri;
  bool operator==(const OntologyRow&) const = default;
};

struct UsedEntities {
  std::vector<EntityId> properties;
  std::vector<EntityId> resources;
};

// Cell values as given to create_comparison / set_cell: an existing entity or
// a literal to intern.
using CellValue = std::variant<EntityId, graph::LiteralValue>;

struct CellInput {
  EntityId contribution;
  EntityId property;
  std::vector<CellValue> values;
};

struct PaperInput {
  std::string title;
  std::vector<std::string> authors;
  std::string publicationDate;
  std::optional<std::string> key;
  // Explicit contribution keys; one auto-keyed contribution when empty.
  std::vector<std::string> contributionKeys;
};

// Write operations. Each runs against the unsynchronized state so callers can
// group several into one store batch; the Articles wrapper below issues one
// batch per call.
namespace ops {

Article createArticle(graph::GraphState& g, const std::string& title, const EntityId& researchField,
                      const graph::Provenance& p, std::optional<std::string> key = std::nullopt);
Section addSection(graph::GraphState& g, const EntityId& articleId, std::size_t position,
                   const std::string& heading, const SectionBody& body, const graph::Provenance& p,
                   std::optional<std::string> key = std::nullopt);
Section updateSection(graph::GraphState& g, const EntityId& sectionId,
                      const std::optional<std::string>& heading,
                      const std::optional<SectionBody>& body, const graph::Provenance& p);
void reorderSections(graph::GraphState& g, const EntityId& articleId,
                     const std::vector<EntityId>& order, const graph::Provenance& p);
void deleteSection(graph::GraphState& g, const EntityId& sectionId, const graph::Provenance& p);

Paper createPaper(graph::GraphState& g, const PaperInput& input, const graph::Provenance& p);
Comparison createComparison(graph::GraphState& g, const std::string& label,
                            const std::vector<ComparisonColumn>& columns,
                            const std::vector<EntityId>& properties,
                            const std::vector<CellInput>& cells, const graph::Provenance& p,
                            std::optional<std::string> key = std::nullopt);
void setCell(graph::GraphState& g, const EntityId& comparisonId, const EntityId& contribution,
             const EntityId& property, const std::vector<CellValue>& values,
             const graph::Provenance& p);
Visualization createVisualization(graph::GraphState& g, const EntityId& comparisonId,
                                  ChartKind kind, const EntityId& seriesProperty,
                                  const std::string& label, const graph::Provenance& p,
                                  std::optional<std::string> key = std::nullopt);
// Replaces the description (and optionally the same-as link) of any entity.
void describeEntity(graph::GraphState& g, const EntityId& entity, const std::string& description,
                    const std::optional<std::string>& sameAs, const graph::Provenance& p);
// Adds (article, predicate, object) for additional article-level facts.
void linkArticle(graph::GraphState& g, const EntityId& articleId, const EntityId& predicate,
                 const EntityId& object, const graph::Provenance& p);

// Description and same-as statements of the vocabulary a statement set refers
// to without owning it (predicates, classes, shared resources). Renders need
// them; traversal never reaches them.
std::vector<graph::Statement> contextStatements(const graph::GraphState& g,
                                                const std::vector<graph::Statement>& owned);
// The article's traversed subgraph plus its context statements.
graph::GraphView articleView(const graph::GraphState& g, const EntityId& articleId);

// Finds the article owning a section in the head graph.
std::optional<EntityId> articleOfSection(const graph::GraphState& g, const EntityId& sectionId);

}  // namespace ops

// Read operations over any view: the head graph or a snapshot.
std::vector<EntityId> listArticles(const graph::GraphView& view);
Article readArticle(const graph::GraphView& view, const EntityId& articleId);
Comparison readComparison(const graph::GraphView& view, const EntityId& comparisonId);
Paper readPaper(const graph::GraphView& view, const EntityId& paperId);
Visualization readVisualization(const graph::GraphView& view, const EntityId& visualizationId);
std::vector<OntologyRow> buildOntologyTable(const graph::GraphView& view,
                                            const std::vector<EntityId>& comparisonIds);
// Entities an ontology table section lists: comparisons expand to their used
// entities, anything else is listed itself.
std::vector<OntologyRow> ontologyRows(const graph::GraphView& view,
                                      const std::vector<EntityId>& listed);
UsedEntities collectUsedEntities(const graph::GraphView& view, const EntityId& articleId);

// Thread-safe wrapper over a Store: one batch per operation, reads from the
// article's traversed subgraph.
class Articles {
 public:
  explicit Articles(graph::Store& store) : store_(store) {}

  Article createArticle(const std::string& title, const EntityId& researchField,
                        const graph::Provenance& p);
  Section addSection(const EntityId& articleId, std::size_t position, const std::string& heading,
                     const SectionBody& body, const graph::Provenance& p);
  Section updateSection(const EntityId& sectionId, const std::optional<std::string>& heading,
                        const std::optional<SectionBody>& body, const graph::Provenance& p);
  Article reorderSections(const EntityId& articleId, const std::vector<EntityId>& order,
                          const graph::Provenance& p);
  Article deleteSection(const EntityId& sectionId, const graph::Provenance& p);
  Paper createPaper(const PaperInput& input, const graph::Provenance& p);
  Comparison createComparison(const std::string& label,
                              const std::vector<ComparisonColumn>& columns,
                              const std::vector<EntityId>& properties,
                              const std::vector<CellInput>& cells, const graph::Provenance& p);
  Comparison setCell(const EntityId& comparisonId, const EntityId& contribution,
                     const EntityId& property, const std::vector<CellValue>& values,
                     const graph::Provenance& p);
  Visualization createVisualization(const EntityId& comparisonId, ChartKind kind,
                                    const EntityId& seriesProperty, const std::string& label,
                                    const graph::Provenance& p);

  Article article(const EntityId& articleId) const;
  Comparison comparison(const EntityId& comparisonId) const;
  std::vector<OntologyRow> ontologyTable(const std::vector<EntityId>& comparisonIds) const;
  UsedEntities usedEntities(const EntityId& articleId) const;
  // The article's traversed subgraph as a view.
  graph::GraphView articleView(const EntityId& articleId) const;

 private:
  graph::Store& store_;
};

}  // namespace smartreview::article
