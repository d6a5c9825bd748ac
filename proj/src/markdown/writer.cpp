#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>

#include "smartreview/markdown/markdown.hpp"

namespace smartreview::markdown {

namespace {

bool isDigit(char c) { return c >= '0' && c <= '9'; }

bool isAutolinkUrl(std::string_view url) {
  std::size_t colon = url.find(':');
  if (colon == std::string_view::npos || colon < 2 || colon > 32) return false;
  if (!std::isalpha(static_cast<unsigned char>(url.front()))) return false;
  for (std::size_t i = 0; i < colon; ++i) {
    char c = url[i];
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '.' || c == '-')) {
      return false;
    }
  }
  return std::none_of(url.begin(), url.end(), [](char c) {
    return c == '<' || c == '>' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

class Writer {
 public:
  std::string blocks(const std::vector<Block>& blocks) {
    std::string out;
    for (const auto& block : blocks) {
      if (!out.empty()) out += "\n\n";
      out += verified(block);
    }
    return out;
  }

 private:
  // Emphasis delimiters interact with their neighbours in ways a single
  // rendering strategy cannot always preserve, so a few are tried and the
  // first one that parses back to the same block wins.
  std::string verified(const Block& block) {
    useHints_ = true;
    mergeMask_ = 0;
    sites_ = 0;
    std::string first = this->block(block);
    if (!hasEmphasis(block)) return first;
    // Each place where literal delimiter characters touch an emphasis node is
    // a site that may be escaped or left to merge with the delimiter run.
    std::size_t sites = std::min<std::size_t>(sites_, 10);
    for (int hints = 1; hints >= 0; --hints) {
      for (std::uint32_t mask = 0; mask < (1u << sites); ++mask) {
        useHints_ = hints == 1;
        mergeMask_ = mask;
        sites_ = 0;
        std::string text = this->block(block);
        TextAst reparsed = parse(text);
        if (reparsed.blocks.size() == 1 && reparsed.blocks[0] == block) return text;
      }
    }
    return first;
  }

  static bool hasEmphasis(const Inlines& inlines) {
    return std::any_of(inlines.begin(), inlines.end(), [](const Inline& i) {
      return std::holds_alternative<Emphasis>(i.node) || std::holds_alternative<Strong>(i.node) ||
             (std::holds_alternative<Link>(i.node) && hasEmphasis(std::get<Link>(i.node).children));
    });
  }

  static bool hasEmphasis(const Block& block) {
    return std::visit(
        [](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Paragraph> || std::is_same_v<T, Heading>) {
            return hasEmphasis(n.content);
          } else if constexpr (std::is_same_v<T, List>) {
            return std::any_of(n.items.begin(), n.items.end(),
                               [](const Inlines& item) { return hasEmphasis(item); });
          } else {
            return false;
          }
        },
        block.node);
  }

  std::string block(const Block& block) {
    return std::visit([this](const auto& node) { return this->node(node); }, block.node);
  }

  std::string node(const Paragraph& p) { return line(p.content); }

  std::string node(const Heading& h) {
    std::string out(static_cast<std::size_t>(h.level), '#');
    std::string content = line(h.content);
    if (!content.empty()) out += " " + content;
    return out;
  }

  std::string node(const List& list) {
    std::string out;
    int number = list.start;
    for (const auto& item : list.items) {
      if (!out.empty()) out += "\n";
      std::string marker = list.ordered ? std::to_string(number++) + "." : "-";
      std::string content = inlines(item, false);
      out += content.empty() ? marker : marker + " " + content;
    }
    return out;
  }

  std::string node(const CodeBlock& code) {
    std::size_t longest = 0, run = 0;
    for (char c : code.code) {
      run = c == '`' ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    std::string fence(std::max<std::size_t>(3, longest + 1), '`');
    std::string out = fence + code.info + "\n";
    if (!code.code.empty()) out += code.code + "\n";
    return out + fence;
  }

  std::string node(const BlockQuote& quote) {
    std::string inner = Writer().blocks(quote.children);
    std::string out;
    std::istringstream lines(inner);
    std::string l;
    bool first = true;
    while (std::getline(lines, l)) {
      if (!first) out += "\n";
      first = false;
      out += l.empty() ? ">" : "> " + l;
    }
    return first ? ">" : out;
  }

  std::string line(const Inlines& content) { return inlines(content, true); }

  std::string inlines(const Inlines& content, bool lineStart) {
    std::string out;
    lineStart_ = lineStart;
    afterBareCitation_ = false;
    emit(content, out, 0);
    return out;
  }

  // `parent` is the delimiter char of the enclosing emphasis node, or 0.
  void emit(const Inlines& content, std::string& out, char parent) {
    std::vector<char> delimiters(content.size(), 0);
    for (std::size_t i = 0; i < content.size(); ++i) {
      const auto& node = content[i].node;
      if (const auto* em = std::get_if<Emphasis>(&node)) {
        delimiters[i] = useHints_ && em->delimiter ? em->delimiter : delimiterFor(content, parent);
      } else if (const auto* strong = std::get_if<Strong>(&node)) {
        delimiters[i] =
            useHints_ && strong->delimiter ? strong->delimiter : delimiterFor(content, parent);
      }
    }
    for (std::size_t i = 0; i < content.size(); ++i) {
      const auto& node = content[i].node;
      bool bare = false;
      if (const auto* text = std::get_if<Text>(&node)) {
        char before = i > 0 ? delimiters[i - 1] : 0;
        char after = i + 1 < content.size() ? delimiters[i + 1] : 0;
        emitText(text->text, out, site(text->text, before, true), site(text->text, after, false));
      } else if (std::holds_alternative<SoftBreak>(node)) {
        out += "\n";
        lineStart_ = true;
        afterBareCitation_ = false;
        continue;
      } else if (const auto* code = std::get_if<Code>(&node)) {
        emitCode(code->code, out);
      } else if (const auto* em = std::get_if<Emphasis>(&node)) {
        out += delimiters[i];
        lineStart_ = false;
        emit(em->children, out, delimiters[i]);
        out += delimiters[i];
      } else if (const auto* strong = std::get_if<Strong>(&node)) {
        out += std::string(2, delimiters[i]);
        lineStart_ = false;
        emit(strong->children, out, delimiters[i]);
        out += std::string(2, delimiters[i]);
      } else if (const auto* link = std::get_if<Link>(&node)) {
        emitLink(*link, out);
      } else if (const auto* group = std::get_if<CitationGroup>(&node)) {
        bare = !group->bracketed;
        emitCitations(*group, out);
      }
      lineStart_ = false;
      afterBareCitation_ = bare;
    }
  }

  // A sole emphasis child would merge its delimiter run with the parent's, so
  // it switches to the other delimiter character.
  static char delimiterFor(const Inlines& siblings, char parent) {
    if (parent == '*' && siblings.size() == 1) return '_';
    return '*';
  }

  // Returns `delimiter` when the text edge carries literal copies of it and the
  // current mask says to merge them, 0 otherwise.
  char site(const std::string& text, char delimiter, bool leading) {
    if (!delimiter || text.empty() || (leading ? text.front() : text.back()) != delimiter) {
      return 0;
    }
    std::size_t index = sites_++;
    return index < 32 && ((mergeMask_ >> index) & 1u) ? delimiter : 0;
  }

  // `before`/`after`: delimiter chars of adjacent emphasis nodes. With run
  // merging on, literal copies of them touching the node stay unescaped so the
  // delimiter run keeps its original length.
  void emitText(const std::string& text, std::string& out, char before, char after) {
    std::size_t lead = 0;
    while (before && lead < text.size() && text[lead] == before) ++lead;
    std::size_t tail = 0;
    while (after && tail < text.size() - lead && text[text.size() - 1 - tail] == after) ++tail;
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      bool escape = false;
      switch (c) {
        case '\\':
        case '`':
        case '*':
        case '_':
        case '[':
        case ']':
        case '<':
        case '@':
        case '#':
          escape = i >= lead && i < text.size() - tail;
          break;
        case '>':
        case '+':
          escape = lineStart_ && i == 0;
          break;
        case '-':
          escape = (lineStart_ || afterBareCitation_) && i == 0;
          break;
        case '.':
        case ')':
          escape = lineStart_ && i > 0 &&
                   std::all_of(text.begin(), text.begin() + static_cast<long>(i), isDigit);
          break;
        default:
          break;
      }
      if (escape) out += '\\';
      out += c;
    }
  }

  static void emitCode(const std::string& code, std::string& out) {
    std::size_t longest = 0, run = 0;
    for (char c : code) {
      run = c == '`' ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    std::string fence(longest + 1, '`');
    bool allSpace = std::all_of(code.begin(), code.end(), [](char c) { return c == ' '; });
    bool pad =
        !code.empty() && !allSpace &&
        (code.front() == '`' || code.back() == '`' || (code.front() == ' ' && code.back() == ' '));
    out += fence;
    if (pad) out += ' ';
    out += code;
    if (pad) out += ' ';
    out += fence;
  }

  void emitLink(const Link& link, std::string& out) {
    if (link.children.size() == 1 && isAutolinkUrl(link.url)) {
      if (const auto* text = std::get_if<Text>(&link.children.front().node)) {
        if (text->text == link.url) {
          out += "<" + link.url + ">";
          return;
        }
      }
    }
    out += "[";
    lineStart_ = false;
    afterBareCitation_ = false;
    emit(link.children, out, 0);
    out += "](" + link.url + ")";
  }

  static void emitCitations(const CitationGroup& group, std::string& out) {
    if (!group.bracketed) {
      for (const auto& c : group.citations) out += "@" + c.key;
      return;
    }
    out += "[";
    for (std::size_t i = 0; i < group.citations.size(); ++i) {
      if (i > 0) out += "; ";
      out += "@" + group.citations[i].key;
    }
    out += "]";
  }

  bool lineStart_ = false;
  bool afterBareCitation_ = false;
  bool useHints_ = true;
  std::uint32_t mergeMask_ = 0;
  std::size_t sites_ = 0;
};

void collectCitations(const Inlines& inlines, std::vector<std::string>& ordered,
                      std::set<std::string>& seen) {
  for (const auto& node : inlines) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, CitationGroup>) {
            for (const auto& c : n.citations) {
              if (seen.insert(c.key).second) ordered.push_back(c.key);
            }
          } else if constexpr (std::is_same_v<T, Emphasis> || std::is_same_v<T, Strong> ||
                               std::is_same_v<T, Link>) {
            collectCitations(n.children, ordered, seen);
          }
        },
        node.node);
  }
}

void collectCitations(const std::vector<Block>& blocks, std::vector<std::string>& ordered,
                      std::set<std::string>& seen) {
  for (const auto& block : blocks) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Paragraph> || std::is_same_v<T, Heading>) {
            collectCitations(n.content, ordered, seen);
          } else if constexpr (std::is_same_v<T, List>) {
            for (const auto& item : n.items) collectCitations(item, ordered, seen);
          } else if constexpr (std::is_same_v<T, BlockQuote>) {
            collectCitations(n.children, ordered, seen);
          }
        },
        block.node);
  }
}

void plain(const Inlines& inlines, std::string& out) {
  for (const auto& node : inlines) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Text>) {
            out += n.text;
          } else if constexpr (std::is_same_v<T, SoftBreak>) {
            out += ' ';
          } else if constexpr (std::is_same_v<T, Code>) {
            out += n.code;
          } else if constexpr (std::is_same_v<T, CitationGroup>) {
            // Rendered as a reference marker; not prose.
          } else {
            plain(n.children, out);
          }
        },
        node.node);
  }
}

void plain(const std::vector<Block>& blocks, std::string& out) {
  for (const auto& block : blocks) {
    if (!out.empty()) out += '\n';
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Paragraph> || std::is_same_v<T, Heading>) {
            plain(n.content, out);
          } else if constexpr (std::is_same_v<T, List>) {
            for (const auto& item : n.items) {
              plain(item, out);
              out += '\n';
            }
          } else if constexpr (std::is_same_v<T, CodeBlock>) {
            out += n.code;
          } else {
            plain(n.children, out);
          }
        },
        block.node);
  }
}

void dump(const Inlines& inlines, std::string& out) {
  for (const auto& node : inlines) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Text>) {
            out += "T\"" + n.text + "\" ";
          } else if constexpr (std::is_same_v<T, SoftBreak>) {
            out += "BR ";
          } else if constexpr (std::is_same_v<T, Code>) {
            out += "C\"" + n.code + "\" ";
          } else if constexpr (std::is_same_v<T, CitationGroup>) {
            out += n.bracketed ? "CITE[" : "CITE(";
            for (const auto& c : n.citations) out += c.key + " ";
            out += n.bracketed ? "] " : ") ";
          } else {
            if constexpr (std::is_same_v<T, Emphasis>) out += "EM{ ";
            if constexpr (std::is_same_v<T, Strong>) out += "STRONG{ ";
            if constexpr (std::is_same_v<T, Link>) out += "LINK<" + n.url + ">{ ";
            dump(n.children, out);
            out += "} ";
          }
        },
        node.node);
  }
}

void dump(const std::vector<Block>& blocks, std::string& out) {
  for (const auto& block : blocks) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Paragraph>) {
            out += "P( ";
            dump(n.content, out);
          } else if constexpr (std::is_same_v<T, Heading>) {
            out += "H" + std::to_string(n.level) + "( ";
            dump(n.content, out);
          } else if constexpr (std::is_same_v<T, List>) {
            out += (n.ordered ? "OL" + std::to_string(n.start) : std::string("UL")) + "( ";
            for (const auto& item : n.items) {
              out += "LI( ";
              dump(item, out);
              out += ") ";
            }
          } else if constexpr (std::is_same_v<T, CodeBlock>) {
            out += "CODE<" + n.info + ">\"" + n.code + "\" ";
          } else {
            out += "QUOTE( ";
            dump(n.children, out);
          }
          out += ")\n";
        },
        block.node);
  }
}

}  // namespace

std::string debugString(const TextAst& ast) {
  std::string out;
  dump(ast.blocks, out);
  return out;
}

std::vector<std::string> extractCitations(const TextAst& ast) {
  std::vector<std::string> ordered;
  extractCitations(ast, ordered);
  return ordered;
}

void extractCitations(const TextAst& ast, std::vector<std::string>& ordered) {
  std::set<std::string> seen(ordered.begin(), ordered.end());
  collectCitations(ast.blocks, ordered, seen);
}

std::string toMarkdown(const TextAst& ast) {
  std::string out = Writer().blocks(ast.blocks);
  if (!out.empty()) out += "\n";
  return out;
}

std::string plainText(const TextAst& ast) {
  std::string out;
  plain(ast.blocks, out);
  return out;
}

std::size_t wordCount(const TextAst& ast) {
  std::istringstream in(plainText(ast));
  std::size_t n = 0;
  std::string word;
  while (in >> word) ++n;
  return n;
}

}  // namespace smartreview::markdown
