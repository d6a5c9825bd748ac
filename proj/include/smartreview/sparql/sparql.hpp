#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "smartreview/graph/graph_view.hpp"
#include "smartreview/rdf/uri.hpp"

// The basic-graph-pattern fragment of SPARQL: PREFIX declarations, SELECT
// [DISTINCT] with a variable list or `*`, and a WHERE block of triple patterns
// using `;`, `,` and `a`. Everything else is rejected by name.
namespace smartreview::sparql {

struct Variable {
  std::string name;  // without the leading ? or $
  bool operator==(const Variable&) const = default;
};

struct Iri {
  std::string iri;  // absolute
  bool operator==(const Iri&) const = default;
};

struct Literal {
  std::string value;
  std::optional<std::string> datatype;  // absolute IRI; nullopt = plain literal
  bool operator==(const Literal&) const = default;
};

using Term = std::variant<Variable, Iri, Literal>;

struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;
  bool operator==(const TriplePattern&) const = default;
};

struct QueryPlan {
  std::map<std::string, std::string> prefixes;
  std::vector<std::string> projection;
  bool distinct = false;
  std::vector<TriplePattern> patterns;
};

// Prefixes every query may use without declaring them.
std::map<std::string, std::string> defaultPrefixes(const rdf::UriMapping& mapping);

// Throws LocatedError: SyntaxError, UnsupportedFeature or UnknownPrefix, with
// the byte offset of the offending token.
QueryPlan parseQuery(std::string_view text, const rdf::UriMapping& mapping = {});

struct SolutionTable {
  std::vector<std::string> header;
  std::vector<std::vector<graph::EntityId>> rows;
  bool operator==(const SolutionTable&) const = default;
};

SolutionTable execute(const QueryPlan& plan, const graph::GraphView& view,
                      const rdf::UriMapping& mapping = {});

// Result serializations. The view supplies literal values.
std::string toCsv(const SolutionTable& table, const graph::GraphView& view,
                  const rdf::UriMapping& mapping = {});
std::string toJson(const SolutionTable& table, const graph::GraphView& view,
                   const rdf::UriMapping& mapping = {});

}  // namespace smartreview::sparql
