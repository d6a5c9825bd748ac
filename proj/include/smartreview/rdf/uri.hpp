#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "smartreview/graph/entity.hpp"

namespace smartreview::rdf {

inline constexpr std::string_view kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kDocoNs = "http://purl.org/spar/doco/";
inline constexpr std::string_view kFabioNs = "http://purl.org/spar/fabio/";
inline constexpr std::string_view kDeoNs = "http://purl.org/spar/deo/";

// Work and section types attached on export. FaBiO and DOCO offer several
// candidates; these are the ones this implementation settled on.
inline constexpr std::string_view kArticleWorkClass = "http://purl.org/spar/fabio/ReviewArticle";
inline constexpr std::string_view kPaperWorkClass = "http://purl.org/spar/fabio/ScholarlyWork";
inline constexpr std::string_view kSectionClass = "http://purl.org/spar/doco/Section";

struct UriBases {
  std::string resource = "http://orkg.org/orkg/resource/";
  std::string predicate = "http://orkg.org/orkg/predicate/";
  std::string klass = "http://orkg.org/orkg/class/";
  // Only used for the opt-in provenance annotations.
  std::string statement = "http://orkg.org/orkg/statement/";
};

// Injective mapping between internal entity ids and absolute URIs. Keys are
// percent-encoded so any valid key yields a valid IRI.
class UriMapping {
 public:
  UriMapping() = default;
  explicit UriMapping(UriBases bases) : bases_(std::move(bases)) {}

  const UriBases& bases() const { return bases_; }

  // Literals have no URI; passing one is a programming error (InvalidKind).
  std::string toUri(const graph::EntityId& id) const;
  // nullopt when the URI is under none of the internal bases.
  std::optional<graph::EntityId> fromUri(std::string_view uri) const;

  std::string statementUri(graph::StatementId id) const;
  bool isStatementUri(std::string_view uri) const;

 private:
  UriBases bases_;
};

// Compact datatype ("xsd:string") <-> absolute datatype IRI. Datatypes outside
// XSD are stored as their absolute IRI.
std::string expandDatatype(std::string_view compact);
std::string compactDatatype(std::string_view iri);

std::string percentEncodeKey(std::string_view key);
std::optional<std::string> percentDecode(std::string_view text);

}  // namespace smartreview::rdf
