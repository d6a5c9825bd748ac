#pragma once

#include <span>
#include <string_view>

#include "smartreview/graph/entity.hpp"

// Identifiers the platform relies on. The numeric ids are the ones used by the
// public scholarly knowledge graph the reference queries were written against;
// the named ones are system structure.
namespace smartreview::graph::vocab {

// Reserved built-in predicate for class membership (rdf:type, `a`).
inline constexpr std::string_view kType = "rdf:type";

// Domain predicates.
inline constexpr std::string_view kResearchField = "P30";
inline constexpr std::string_view kHasContribution = "P31";
inline constexpr std::string_view kResearchProblem = "P32";
inline constexpr std::string_view kP27 = "P27";
inline constexpr std::string_view kRdfSupport = "P7009";
inline constexpr std::string_view kHasSection = "HasSection";

// System structure predicates.
inline constexpr std::string_view kSectionOrder = "SectionOrder";
inline constexpr std::string_view kSectionHeading = "SectionHeading";
inline constexpr std::string_view kHasMarkdown = "HasMarkdown";
inline constexpr std::string_view kCites = "Cites";
inline constexpr std::string_view kHasComparison = "HasComparison";
inline constexpr std::string_view kHasVisualization = "HasVisualization";
inline constexpr std::string_view kListsEntity = "ListsEntity";
inline constexpr std::string_view kTitle = "Title";
inline constexpr std::string_view kHasAuthor = "HasAuthor";
inline constexpr std::string_view kPublicationDate = "PublicationDate";
inline constexpr std::string_view kHasColumn = "HasColumn";
inline constexpr std::string_view kColumnIndex = "ColumnIndex";
inline constexpr std::string_view kColumnPaper = "ColumnPaper";
inline constexpr std::string_view kColumnContribution = "ColumnContribution";
inline constexpr std::string_view kHasRow = "HasRow";
inline constexpr std::string_view kRowIndex = "RowIndex";
inline constexpr std::string_view kRowProperty = "RowProperty";
inline constexpr std::string_view kVisualizesComparison = "VisualizesComparison";
inline constexpr std::string_view kChartKind = "ChartKind";
inline constexpr std::string_view kSeriesProperty = "SeriesProperty";
inline constexpr std::string_view kDescription = "Description";
inline constexpr std::string_view kSameAs = "SameAs";

// Classes.
inline constexpr std::string_view kSmartReview = "SmartReview";
inline constexpr std::string_view kContribution = "Contribution";
inline constexpr std::string_view kPaper = "Paper";
inline constexpr std::string_view kComparison = "Comparison";
inline constexpr std::string_view kVisualization = "Visualization";
inline constexpr std::string_view kComparisonColumn = "ComparisonColumn";
inline constexpr std::string_view kComparisonRow = "ComparisonRow";
inline constexpr std::string_view kComparisonSection = "ComparisonSection";
inline constexpr std::string_view kVisualizationSection = "VisualizationSection";
inline constexpr std::string_view kOntologyTableSection = "OntologyTableSection";
inline constexpr std::string_view kResourceTableSection = "ResourceTableSection";
inline constexpr std::string_view kPropertyTableSection = "PropertyTableSection";
inline constexpr std::string_view kIntroduction = "Introduction";

// Resources.
inline constexpr std::string_view kInformationScience = "R278";
inline constexpr std::string_view kScholarlyCommunication = "R49584";
inline constexpr std::string_view kR8193 = "R8193";
// Reserved for the showcase review article; claimed by the fixture seed.
inline constexpr std::string_view kShowcaseReview = "R135360";

// Accounts that exist in every store.
inline constexpr std::string_view kSystemUser = "system";
inline constexpr std::string_view kImportUser = "import";
inline constexpr std::string_view kFixtureUser = "fixture";
inline constexpr std::string_view kCliUser = "cli";

inline constexpr std::string_view kXsdString = "xsd:string";
inline constexpr std::string_view kXsdInteger = "xsd:integer";
inline constexpr std::string_view kXsdAnyUri = "xsd:anyURI";

struct VocabularyEntry {
  EntityKind kind;
  std::string_view key;
  std::string_view label;
  bool structural;  // system plumbing, hidden from "used entities" tables
};

std::span<const VocabularyEntry> wellKnown();

// DEO discourse element class names, in file order.
std::span<const std::string_view> deoClasses();
bool isDeoClass(std::string_view key);

// True for predicates that encode document structure rather than knowledge.
bool isStructuralPredicate(std::string_view key);

// Section classes that are not DEO types.
bool isStructuralSectionClass(std::string_view key);

}  // namespace smartreview::graph::vocab
