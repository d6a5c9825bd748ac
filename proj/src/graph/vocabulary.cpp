#include "smartreview/graph/vocabulary.hpp"

#include <algorithm>
#include <array>

namespace smartreview::graph::vocab {

namespace {

// Generated from data/deo-classes.txt at configure time.
constexpr std::string_view kDeoClasses[] = {
#include "deo_classes.inc"
};

using K = EntityKind;

constexpr VocabularyEntry kWellKnown[] = {
    {K::Predicate, kType, "type", true},
    {K::Predicate, kResearchField, "research field", false},
    {K::Predicate, kHasContribution, "has contribution", true},
    {K::Predicate, kResearchProblem, "research problem", false},
    {K::Predicate, kP27, "P27", false},
    {K::Predicate, kRdfSupport, "RDF support", false},
    {K::Predicate, kHasSection, "has section", true},
    {K::Predicate, kSectionOrder, "section order", true},
    {K::Predicate, kSectionHeading, "section heading", true},
    {K::Predicate, kHasMarkdown, "markdown text", true},
    {K::Predicate, kCites, "cites", true},
    {K::Predicate, kHasComparison, "has comparison", true},
    {K::Predicate, kHasVisualization, "has visualization", true},
    {K::Predicate, kListsEntity, "lists entity", true},
    {K::Predicate, kTitle, "title", true},
    {K::Predicate, kHasAuthor, "author", true},
    {K::Predicate, kPublicationDate, "publication date", true},
    {K::Predicate, kHasColumn, "has column", true},
    {K::Predicate, kColumnIndex, "column index", true},
    {K::Predicate, kColumnPaper, "column paper", true},
    {K::Predicate, kColumnContribution, "column contribution", true},
    {K::Predicate, kHasRow, "has row", true},
    {K::Predicate, kRowIndex, "row index", true},
    {K::Predicate, kRowProperty, "row property", true},
    {K::Predicate, kVisualizesComparison, "visualizes comparison", true},
    {K::Predicate, kChartKind, "chart kind", true},
    {K::Predicate, kSeriesProperty, "series property", true},
    {K::Predicate, kDescription, "description", true},
    {K::Predicate, kSameAs, "same as", true},
    {K::Class, kSmartReview, "SmartReview", true},
    {K::Class, kContribution, "Contribution", true},
    {K::Class, kPaper, "Paper", true},
    {K::Class, kComparison, "Comparison", true},
    {K::Class, kVisualization, "Visualization", true},
    {K::Class, kComparisonColumn, "Comparison column", true},
    {K::Class, kComparisonRow, "Comparison row", true},
    {K::Class, kComparisonSection, "Comparison section", true},
    {K::Class, kVisualizationSection, "Visualization section", true},
    {K::Class, kOntologyTableSection, "Ontology table section", true},
    {K::Class, kResourceTableSection, "Resource table section", true},
    {K::Class, kPropertyTableSection, "Property table section", true},
    {K::Resource, kInformationScience, "information science", false},
    {K::Resource, kScholarlyCommunication, "Scholarly Communication", false},
    {K::Resource, kR8193, "R8193", false},
};

}  // namespace

std::span<const VocabularyEntry> wellKnown() { return kWellKnown; }

std::span<const std::string_view> deoClasses() { return kDeoClasses; }

bool isDeoClass(std::string_view key) {
  return std::find(std::begin(kDeoClasses), std::end(kDeoClasses), key) != std::end(kDeoClasses);
}

bool isStructuralPredicate(std::string_view key) {
  for (const auto& entry : kWellKnown) {
    if (entry.kind == K::Predicate && entry.key == key) return entry.structural;
  }
  return false;
}

bool isStructuralSectionClass(std::string_view key) {
  return key == kComparisonSection || key == kVisualizationSection ||
         key == kOntologyTableSection || key == kResourceTableSection ||
         key == kPropertyTableSection;
}

}  // namespace smartreview::graph::vocab
