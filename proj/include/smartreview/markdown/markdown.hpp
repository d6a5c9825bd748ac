#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smartreview/markdown/ast.hpp"

namespace smartreview::markdown {

// Parses the supported Markdown subset plus citation syntax. Total: anything
// that is not a recognised construct degrades to plain text, raw HTML
// included.
TextAst parse(std::string_view text);

// Citation keys in first-appearance order, duplicates removed.
std::vector<std::string> extractCitations(const TextAst& ast);
// Same, continuing an ordering that already holds `seen` keys.
void extractCitations(const TextAst& ast, std::vector<std::string>& ordered);

// Canonical Markdown for the AST; parse(toMarkdown(parse(t))) == parse(t).
std::string toMarkdown(const TextAst& ast);

// Compact structural dump, for test diagnostics.
std::string debugString(const TextAst& ast);

// Visible text only (no markup), used for word counts.
std::string plainText(const TextAst& ast);
std::size_t wordCount(const TextAst& ast);

struct CitationTarget {
  int number = 0;
};

using CitationResolver = std::function<std::optional<CitationTarget>(std::string_view key)>;

struct HtmlOptions {
  // Added to every heading level; headings are additionally clamped so they
  // never skip a level below `enclosingLevel`.
  int headingOffset = 0;
  int enclosingLevel = 1;
};

std::string emitHtml(const TextAst& ast, const CitationResolver& resolver,
                     const HtmlOptions& options = {});

std::string escapeHtml(std::string_view text);

bool isCitationKeyChar(char c);

}  // namespace smartreview::markdown
