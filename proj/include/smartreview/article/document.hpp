#pragma once

#include <string>
#include <string_view>

#include "smartreview/article/article.hpp"

// Plain-text article documents, one file per article:
//
//   smartreview-document 1
//   title: Scholarly Knowledge Graphs
//   key: R135360                    (optional)
//   research-field: R278
//   link: P27 R8193                 (extra article statements, repeatable)
//
//   [property P7009]                label, description, same-as
//   [resource R49584]               label, description, same-as
//   [paper R44001]                  title, authors (a; b), date, contributions
//   [comparison R46001]             label, csv: |  (indented CSV block)
//   [visualization R47001]          comparison, chart, series, label
//   [section R48001]                type, heading, target, entities, markdown: |
//
// Comparison CSV: first row holds property labels (or orkgp:KEY), first column
// paper titles (the n-th row of a title maps to the paper's n-th contribution;
// orkgr:KEY names a contribution directly). Cells hold values separated by
// ';'; orkgr:KEY is a resource, anything else a literal, optionally typed with
// a ^^xsd:type suffix. Backslash escapes '\', ';' and '^'.
//
// Lines starting with '#' at column 0 are comments; multi-line values are
// indented by four spaces.
namespace smartreview::article {

// Creates everything the document describes. Properties, resources and papers
// that already exist are reused; any other failure leaves the state as the
// caller's batch rolls it back. ParseError errors carry the 1-based line.
EntityId importDocument(graph::GraphState& g, std::string_view text, const graph::Provenance& p);

// Canonical document for an article view (see ops::articleView);
// importDocument of the result into an empty store exports identically.
std::string exportDocument(const graph::GraphView& view, const EntityId& articleId);

// RFC 4180 CSV, as used by the comparison blocks and the comparison download.
std::vector<std::vector<std::string>> parseCsv(std::string_view text);
std::string csvField(std::string_view field);

}  // namespace smartreview::article
