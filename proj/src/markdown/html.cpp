#include <algorithm>

#include "smartreview/markdown/markdown.hpp"

namespace smartreview::markdown {

namespace {

class HtmlWriter {
 public:
  HtmlWriter(const CitationResolver& resolver, const HtmlOptions& options)
      : resolver_(resolver), options_(options), lastLevel_(options.enclosingLevel) {}

  void blocks(const std::vector<Block>& blocks, std::string& out) {
    for (const auto& block : blocks) {
      std::visit([&](const auto& n) { this->block(n, out); }, block.node);
    }
  }

 private:
  void block(const Paragraph& p, std::string& out) {
    out += "<p>";
    inlines(p.content, out);
    out += "</p>\n";
  }

  void block(const Heading& h, std::string& out) {
    // Never skip a level: at most one deeper than the previous heading.
    int level = std::clamp(h.level + options_.headingOffset, options_.enclosingLevel + 1,
                           std::min(6, lastLevel_ + 1));
    lastLevel_ = level;
    std::string tag = "h" + std::to_string(level);
    out += "<" + tag + ">";
    inlines(h.content, out);
    out += "</" + tag + ">\n";
  }

  void block(const List& list, std::string& out) {
    if (list.ordered) {
      out += list.start == 1 ? "<ol>\n" : "<ol start=\"" + std::to_string(list.start) + "\">\n";
    } else {
      out += "<ul>\n";
    }
    for (const auto& item : list.items) {
      out += "<li>";
      inlines(item, out);
      out += "</li>\n";
    }
    out += list.ordered ? "</ol>\n" : "</ul>\n";
  }

  void block(const CodeBlock& code, std::string& out) {
    out += "<pre><code";
    if (!code.info.empty()) {
      std::string lang = code.info.substr(0, code.info.find_first_of(" \t"));
      out += " class=\"language-" + escapeHtml(lang) + "\"";
    }
    out += ">" + escapeHtml(code.code);
    if (!code.code.empty()) out += "\n";
    out += "</code></pre>\n";
  }

  void block(const BlockQuote& quote, std::string& out) {
    out += "<blockquote>\n";
    blocks(quote.children, out);
    out += "</blockquote>\n";
  }

  void inlines(const Inlines& content, std::string& out) {
    for (const auto& node : content) {
      std::visit([&](const auto& n) { this->inline_(n, out); }, node.node);
    }
  }

  void inline_(const Text& t, std::string& out) { out += escapeHtml(t.text); }
  void inline_(const SoftBreak&, std::string& out) { out += "\n"; }
  void inline_(const Code& c, std::string& out) {
    out += "<code>" + escapeHtml(c.code) + "</code>";
  }

  void inline_(const Emphasis& e, std::string& out) {
    out += "<em>";
    inlines(e.children, out);
    out += "</em>";
  }

  void inline_(const Strong& s, std::string& out) {
    out += "<strong>";
    inlines(s.children, out);
    out += "</strong>";
  }

  void inline_(const Link& l, std::string& out) {
    out += "<a href=\"" + escapeHtml(l.url) + "\">";
    inlines(l.children, out);
    out += "</a>";
  }

  void inline_(const CitationGroup& group, std::string& out) {
    for (std::size_t i = 0; i < group.citations.size(); ++i) {
      if (i > 0) out += ", ";
      const auto& key = group.citations[i].key;
      auto target = resolver_ ? resolver_(key) : std::nullopt;
      if (target) {
        out += "<a href=\"#ref-" + escapeHtml(key) +
               "\" class=\"citation\" role=\"doc-biblioref\">[" + std::to_string(target->number) +
               "]</a>";
      } else {
        out +=
            "<span class=\"citation unresolved\" data-unresolved=\"true\" title=\"Unresolved "
            "reference\">[@" +
            escapeHtml(key) + "]</span>";
      }
    }
  }

  const CitationResolver& resolver_;
  HtmlOptions options_;
  int lastLevel_;
};

}  // namespace

std::string escapeHtml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&#39;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string emitHtml(const TextAst& ast, const CitationResolver& resolver,
                     const HtmlOptions& options) {
  std::string out;
  HtmlWriter(resolver, options).blocks(ast.blocks, out);
  return out;
}

}  // namespace smartreview::markdown
