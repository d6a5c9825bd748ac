#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "smartreview/graph/graph_view.hpp"
#include "smartreview/graph/store.hpp"
#include "smartreview/rdf/uri.hpp"

namespace smartreview::rdf {

enum class RdfFormat { NTriples, Turtle };

std::string_view mediaType(RdfFormat format);

struct ExportOptions {
  // Adds one reified annotation per statement carrying user and timestamp.
  bool provenance = false;
};

// Serializes a view. Besides the view's statements the document carries an
// rdfs:label for every non-literal entity it mentions and the publishing-
// ontology types: FaBiO work classes for articles and papers, DOCO Section for
// sections, DEO classes for natural-text sections. N-Triples output is one
// triple per line, byte-sorted, without duplicates.
std::string exportRdf(const graph::GraphView& view, RdfFormat format,
                      const UriMapping& mapping = {}, const ExportOptions& options = {});

// One parsed N-Triples term.
struct IriTerm {
  std::string iri;
  bool operator==(const IriTerm&) const = default;
};
struct LiteralTerm {
  std::string value;
  std::string datatype;  // absolute IRI; xsd:string for simple literals
  bool operator==(const LiteralTerm&) const = default;
};
using RdfTerm = std::variant<IriTerm, LiteralTerm>;

struct RdfTriple {
  IriTerm subject;
  IriTerm predicate;
  RdfTerm object;
  std::size_t line = 0;
};

// Throws LocatedError(ParseError) with the 1-based line number. Blank nodes
// and language-tagged literals are rejected.
std::vector<RdfTriple> parseNTriples(std::string_view document);

// Imports a document into the store in a single batch: either every triple
// lands or nothing does. Labels and publishing-ontology types are absorbed
// into entities rather than stored; provenance annotations are skipped.
// Triples already present in the head graph are not duplicated. Returns the
// number of statements added. Errors carry the offending line: ParseError,
// UnknownUriBase.
std::size_t importNTriples(graph::Store& store, std::string_view document,
                           const UriMapping& mapping = {});

// Term encoders shared with the Turtle writer and the snapshot files.
std::string ntriplesIri(std::string_view iri);
std::string ntriplesLiteral(std::string_view value, std::string_view datatypeIri);

}  // namespace smartreview::rdf
