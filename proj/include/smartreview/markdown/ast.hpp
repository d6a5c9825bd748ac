#pragma once

#include <string>
#include <variant>
#include <vector>

namespace smartreview::markdown {

struct Inline;
using Inlines = std::vector<Inline>;

struct Text {
  std::string text;
  bool operator==(const Text&) const = default;
};

struct SoftBreak {
  bool operator==(const SoftBreak&) const = default;
};

struct Code {
  std::string code;
  bool operator==(const Code&) const = default;
};

// `delimiter` remembers the source character (`*` or `_`) so re-emitted
// Markdown keeps the author's choice; it is not part of node identity.
struct Emphasis {
  Inlines children;
  char delimiter = 0;
  bool operator==(const Emphasis&) const;
};

struct Strong {
  Inlines children;
  char delimiter = 0;
  bool operator==(const Strong&) const;
};

struct Link {
  Inlines children;
  std::string url;
  bool operator==(const Link&) const;
};

// Reference to a paper record by its graph key; `raw` is the source span.
struct Citation {
  std::string key;
  std::string raw;
  bool operator==(const Citation&) const = default;
};

// `[@a; @b]` (bracketed) or a bare `@a`.
struct CitationGroup {
  std::vector<Citation> citations;
  bool bracketed = true;
  bool operator==(const CitationGroup&) const = default;
};

struct Inline {
  std::variant<Text, SoftBreak, Code, Emphasis, Strong, Link, CitationGroup> node;
  bool operator==(const Inline&) const = default;
};

inline bool Emphasis::operator==(const Emphasis& o) const { return children == o.children; }
inline bool Strong::operator==(const Strong& o) const { return children == o.children; }
inline bool Link::operator==(const Link& o) const { return url == o.url && children == o.children; }

struct Block;

struct Paragraph {
  Inlines content;
  bool operator==(const Paragraph&) const = default;
};

// Levels are always within [2, 4]; level 1 belongs to the article title.
struct Heading {
  int level = 2;
  Inlines content;
  bool operator==(const Heading&) const = default;
};

struct List {
  bool ordered = false;
  int start = 1;
  std::vector<Inlines> items;
  bool operator==(const List&) const = default;
};

struct CodeBlock {
  std::string info;
  std::string code;
  bool operator==(const CodeBlock&) const = default;
};

struct BlockQuote {
  std::vector<Block> children;
  bool operator==(const BlockQuote&) const;
};

struct Block {
  std::variant<Paragraph, Heading, List, CodeBlock, BlockQuote> node;
  bool operator==(const Block&) const = default;
};

inline bool BlockQuote::operator==(const BlockQuote& o) const { return children == o.children; }

struct TextAst {
  std::vector<Block> blocks;
  bool operator==(const TextAst&) const = default;
};

}  // namespace smartreview::markdown
