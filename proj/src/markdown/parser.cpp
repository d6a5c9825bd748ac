#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <tuple>

#include "smartreview/markdown/markdown.hpp"

namespace smartreview::markdown {

namespace {

constexpr std::size_t npos = std::string_view::npos;

bool isSpace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool isAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool isAsciiPunct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && isSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && isSpace(s.back())) s.remove_suffix(1);
  return s;
}

bool isBlank(std::string_view line) { return trim(line).empty(); }

std::size_t leadingSpaces(std::string_view line) {
  std::size_t n = 0;
  while (n < line.size() && line[n] == ' ') ++n;
  return n;
}

// ---------------------------------------------------------------------------
// Inline parsing

class InlineParser {
 public:
  explicit InlineParser(std::string_view src) : src_(src) {}

  Inlines parse(std::size_t begin, std::size_t end, bool allowLinks = true) {
    Inlines out;
    std::string text;
    auto flush = [&] {
      if (!text.empty()) out.push_back({Text{std::move(text)}});
      text.clear();
    };
    std::size_t pos = begin;
    while (pos < end) {
      char c = src_[pos];
      if (c == '\\') {
        if (pos + 1 < end && isAsciiPunct(src_[pos + 1])) {
          text.push_back(src_[pos + 1]);
          pos += 2;
        } else {
          text.push_back('\\');
          ++pos;
        }
        continue;
      }
      if (c == '\n') {
        flush();
        out.push_back({SoftBreak{}});
        ++pos;
        continue;
      }
      if (c == '`') {
        if (auto span = codeSpan(pos, end)) {
          flush();
          out.push_back({Code{span->code}});
          pos = span->end;
        } else {
          std::size_t run = runLength(pos, end, '`');
          text.append(run, '`');
          pos += run;
        }
        continue;
      }
      if (c == '<') {
        if (auto tag = allowLinks ? angle(pos, end) : std::nullopt) {
          flush();
          out.push_back({Link{{Inline{Text{tag->url}}}, tag->url}});
          pos = tag->end;
          continue;
        }
        text.push_back('<');
        ++pos;
        continue;
      }
      if (c == '[') {
        if (auto group = citationGroup(pos, end)) {
          flush();
          out.push_back({std::move(group->group)});
          pos = group->end;
          continue;
        }
        if (allowLinks) {
          if (auto link = linkAt(pos, end)) {
            flush();
            Link node;
            node.children = parse(pos + 1, link->textEnd, false);
            node.url = std::string(src_.substr(link->urlBegin, link->urlEnd - link->urlBegin));
            out.push_back({std::move(node)});
            pos = link->end;
            continue;
          }
        }
        text.push_back('[');
        ++pos;
        continue;
      }
      if (c == '@') {
        if (std::size_t keyEnd = bareCitation(pos, end)) {
          flush();
          std::string key(src_.substr(pos + 1, keyEnd - pos - 1));
          out.push_back({CitationGroup{{Citation{key, "@" + key}}, false}});
          pos = keyEnd;
          continue;
        }
      }
      if (c == '*' || c == '_') {
        // The delimiter is taken from the end of the run nearest the content;
        // any excess stays literal text in front of it.
        std::size_t run = runLength(pos, end, c);
        std::size_t content = pos + run;
        if (canOpen(pos, run, end)) {
          if (run >= 2) {
            std::size_t closer = findCloser(c, true, content, end, allowLinks);
            if (closer != npos) {
              text.append(run - 2, c);
              flush();
              out.push_back({Strong{parse(content, closer, allowLinks), c}});
              pos = closer + 2;
              continue;
            }
          }
          std::size_t closer = findCloser(c, false, content, end, allowLinks);
          if (closer != npos) {
            text.append(run - 1, c);
            flush();
            out.push_back({Emphasis{parse(content, closer, allowLinks), c}});
            pos = closer + 1;
            continue;
          }
        }
        text.append(run, c);
        pos += run;
        continue;
      }
      text.push_back(c);
      ++pos;
    }
    flush();
    return out;
  }

 private:
  struct CodeSpan {
    std::string code;
    std::size_t end;
  };
  struct Angle {
    std::string url;
    std::size_t end;
  };
  struct GroupMatch {
    CitationGroup group;
    std::size_t end;
  };
  struct LinkMatch {
    std::size_t textEnd;
    std::size_t urlBegin;
    std::size_t urlEnd;
    std::size_t end;
  };

  std::size_t runLength(std::size_t pos, std::size_t end, char c) const {
    std::size_t n = 0;
    while (pos + n < end && src_[pos + n] == c) ++n;
    return n;
  }

  char at(std::size_t pos) const { return pos < src_.size() ? src_[pos] : ' '; }

  // End of a bare `@key` starting at pos, or 0. The `@` must not follow a word
  // character, which keeps e-mail addresses out.
  std::size_t bareCitation(std::size_t pos, std::size_t end) const {
    char prev = pos == 0 ? ' ' : src_[pos - 1];
    if (!(isSpace(prev) || prev == '(' || prev == '*' || prev == '_')) return 0;
    std::size_t keyEnd = pos + 1;
    while (keyEnd < end && isCitationKeyChar(src_[keyEnd])) ++keyEnd;
    return keyEnd > pos + 1 ? keyEnd : 0;
  }

  // Flanking rules: a run opens when followed by non-space (and, if followed
  // by punctuation, preceded by space or punctuation); closing mirrors that.
  // `_` additionally refuses to open or close inside a word.
  bool leftFlanking(std::size_t pos, std::size_t run) const {
    char prev = pos == 0 ? ' ' : src_[pos - 1];
    char next = at(pos + run);
    return !isSpace(next) && (!isAsciiPunct(next) || isSpace(prev) || isAsciiPunct(prev));
  }

  bool rightFlanking(std::size_t pos, std::size_t run) const {
    char prev = pos == 0 ? ' ' : src_[pos - 1];
    char next = at(pos + run);
    return !isSpace(prev) && (!isAsciiPunct(prev) || isSpace(next) || isAsciiPunct(next));
  }

  bool canOpen(std::size_t pos, std::size_t run, std::size_t end) const {
    if (pos + run >= end || !leftFlanking(pos, run)) return false;
    if (src_[pos] == '*') return true;
    return !rightFlanking(pos, run) || isAsciiPunct(src_[pos - 1]);
  }

  bool canClose(std::size_t pos, std::size_t run, std::size_t start) const {
    if (pos <= start || !rightFlanking(pos, run)) return false;
    if (src_[pos] == '*') return true;
    return !leftFlanking(pos, run) || isAsciiPunct(at(pos + run));
  }

  std::optional<CodeSpan> codeSpan(std::size_t pos, std::size_t end) const {
    std::size_t run = runLength(pos, end, '`');
    std::size_t j = pos + run;
    while (j < end) {
      if (src_[j] != '`') {
        ++j;
        continue;
      }
      std::size_t closing = runLength(j, end, '`');
      if (closing == run) {
        std::string code(src_.substr(pos + run, j - pos - run));
        std::replace(code.begin(), code.end(), '\n', ' ');
        bool allSpace = std::all_of(code.begin(), code.end(), [](char c) { return c == ' '; });
        if (code.size() >= 2 && code.front() == ' ' && code.back() == ' ' && !allSpace) {
          code = code.substr(1, code.size() - 2);
        }
        return CodeSpan{std::move(code), j + closing};
      }
      j += closing;
    }
    return std::nullopt;
  }

  // `<scheme:rest>` autolinks. Anything else in angle brackets is plain text.
  std::optional<Angle> angle(std::size_t pos, std::size_t end) const {
    std::size_t close = pos + 1;
    while (close < end && src_[close] != '>' && src_[close] != '<' && !isSpace(src_[close])) {
      ++close;
    }
    if (close >= end || src_[close] != '>') return std::nullopt;
    std::string_view inner = src_.substr(pos + 1, close - pos - 1);
    std::size_t colon = inner.find(':');
    if (colon == npos || colon < 2 || colon > 32) return std::nullopt;
    if (!std::isalpha(static_cast<unsigned char>(inner.front()))) return std::nullopt;
    for (std::size_t i = 0; i < colon; ++i) {
      char c = inner[i];
      if (!(isAlnum(c) || c == '+' || c == '.' || c == '-')) return std::nullopt;
    }
    return Angle{std::string(inner), close + 1};
  }

  std::optional<GroupMatch> citationGroup(std::size_t pos, std::size_t end) const {
    std::size_t j = pos + 1;
    auto skipSpaces = [&] {
      while (j < end && (src_[j] == ' ' || src_[j] == '\t')) ++j;
    };
    CitationGroup group;
    group.bracketed = true;
    skipSpaces();
    while (true) {
      if (j >= end || src_[j] != '@') return std::nullopt;
      std::size_t keyBegin = ++j;
      while (j < end && isCitationKeyChar(src_[j])) ++j;
      if (j == keyBegin) return std::nullopt;
      std::string key(src_.substr(keyBegin, j - keyBegin));
      group.citations.push_back({key, "@" + key});
      skipSpaces();
      if (j < end && src_[j] == ';') {
        ++j;
        skipSpaces();
        continue;
      }
      if (j < end && src_[j] == ']') return GroupMatch{std::move(group), j + 1};
      return std::nullopt;
    }
  }

  std::optional<LinkMatch> linkAt(std::size_t pos, std::size_t end) const {
    std::size_t j = pos + 1;
    int depth = 1;
    while (j < end) {
      char c = src_[j];
      if (c == '\\' && j + 1 < end) {
        j += 2;
        continue;
      }
      if (c == '`') {
        if (auto span = codeSpan(j, end)) {
          j = span->end;
          continue;
        }
        j += runLength(j, end, '`');
        continue;
      }
      if (c == '[') ++depth;
      if (c == ']' && --depth == 0) break;
      ++j;
    }
    if (j >= end || depth != 0) return std::nullopt;
    std::size_t textEnd = j;
    if (textEnd + 1 >= end || src_[textEnd + 1] != '(') return std::nullopt;
    std::size_t urlBegin = textEnd + 2;
    std::size_t k = urlBegin;
    while (k < end && src_[k] != ')' && src_[k] != '(' && src_[k] != '<' && src_[k] != '>' &&
           !isSpace(src_[k])) {
      ++k;
    }
    if (k >= end || src_[k] != ')') return std::nullopt;
    return LinkMatch{textEnd, urlBegin, k, k + 1};
  }

  // Steps over constructs that bind tighter than emphasis.
  std::optional<std::size_t> skipTight(std::size_t j, std::size_t end, bool allowLinks) const {
    char c = src_[j];
    if (c == '\\') return std::min(end, j + 2);
    if (c == '`') {
      if (auto span = codeSpan(j, end)) return span->end;
      return j + runLength(j, end, '`');
    }
    if (c == '@') {
      if (std::size_t keyEnd = bareCitation(j, end)) return keyEnd;
    }
    if (c == '<' && allowLinks) {
      if (auto tag = angle(j, end)) return tag->end;
    }
    if (c == '[') {
      if (auto group = citationGroup(j, end)) return group->end;
      if (allowLinks) {
        if (auto link = linkAt(j, end)) return link->end;
      }
    }
    return std::nullopt;
  }

  // Position of the closing delimiter for an opener of `c` (double = strong)
  // whose content starts at `from`. Nested constructs of the other strength
  // are stepped over so that `*a **b** c*` pairs correctly.
  std::size_t findCloser(char c, bool isDouble, std::size_t from, std::size_t end,
                         bool allowLinks) {
    auto key = std::make_tuple(c, isDouble, from, end, allowLinks);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::size_t result = npos;
    std::size_t j = from;
    while (j < end) {
      if (auto next = skipTight(j, end, allowLinks)) {
        j = *next;
        continue;
      }
      if (src_[j] != c) {
        ++j;
        continue;
      }
      std::size_t run = runLength(j, end, c);
      if (canClose(j, run, from) && (!isDouble || run >= 2)) {
        result = j;
        break;
      }
      if (canOpen(j, run, end)) {
        if (run >= 2) {
          std::size_t inner = findCloser(c, true, j + run, end, allowLinks);
          if (inner != npos) {
            j = inner + 2;
            continue;
          }
        }
        std::size_t inner = findCloser(c, false, j + run, end, allowLinks);
        if (inner != npos) {
          j = inner + 1;
          continue;
        }
      }
      j += run;
    }
    memo_[key] = result;
    return result;
  }

  std::string_view src_;
  std::map<std::tuple<char, bool, std::size_t, std::size_t, bool>, std::size_t> memo_;
};

void mergeText(Inlines& inlines) {
  Inlines merged;
  for (auto& node : inlines) {
    if (auto* text = std::get_if<Text>(&node.node)) {
      if (text->text.empty()) continue;
      if (!merged.empty()) {
        if (auto* prev = std::get_if<Text>(&merged.back().node)) {
          prev->text += text->text;
          continue;
        }
      }
    } else if (auto* em = std::get_if<Emphasis>(&node.node)) {
      mergeText(em->children);
    } else if (auto* strong = std::get_if<Strong>(&node.node)) {
      mergeText(strong->children);
    } else if (auto* link = std::get_if<Link>(&node.node)) {
      mergeText(link->children);
    }
    merged.push_back(std::move(node));
  }
  inlines = std::move(merged);
}

Inlines parseInlines(std::string_view text) {
  std::string owned(text);
  InlineParser parser(owned);
  Inlines out = parser.parse(0, owned.size());
  mergeText(out);
  return out;
}

// ---------------------------------------------------------------------------
// Block parsing

struct Fence {
  std::size_t indent;
  std::size_t length;
  std::string info;
};

std::optional<Fence> fenceOpen(std::string_view line) {
  std::size_t indent = leadingSpaces(line);
  if (indent > 3) return std::nullopt;
  std::size_t n = 0;
  while (indent + n < line.size() && line[indent + n] == '`') ++n;
  if (n < 3) return std::nullopt;
  std::string_view info = trim(line.substr(indent + n));
  if (info.find('`') != npos) return std::nullopt;
  return Fence{indent, n, std::string(info)};
}

bool fenceCloses(std::string_view line, std::size_t length) {
  std::size_t indent = leadingSpaces(line);
  if (indent > 3) return false;
  std::size_t n = 0;
  while (indent + n < line.size() && line[indent + n] == '`') ++n;
  return n >= length && isBlank(line.substr(indent + n));
}

struct HeadingMatch {
  int level;
  std::string_view content;
};

std::optional<HeadingMatch> headingLine(std::string_view line) {
  std::size_t indent = leadingSpaces(line);
  if (indent > 3) return std::nullopt;
  std::size_t n = 0;
  while (indent + n < line.size() && line[indent + n] == '#') ++n;
  if (n == 0 || n > 6) return std::nullopt;
  std::size_t after = indent + n;
  if (after < line.size() && line[after] != ' ' && line[after] != '\t') return std::nullopt;
  std::string_view content = trim(line.substr(after));
  // Optional closing sequence: whitespace then #'s at the end.
  std::size_t hashes = 0;
  while (hashes < content.size() && content[content.size() - 1 - hashes] == '#') ++hashes;
  if (hashes == content.size()) {
    content = {};
  } else if (hashes > 0 && isSpace(content[content.size() - 1 - hashes])) {
    content = trim(content.substr(0, content.size() - hashes));
  }
  int level = std::clamp(static_cast<int>(n), 2, 4);
  return HeadingMatch{level, content};
}

bool isQuoteLine(std::string_view line) {
  std::size_t indent = leadingSpaces(line);
  return indent <= 3 && indent < line.size() && line[indent] == '>';
}

std::string_view stripQuote(std::string_view line) {
  std::size_t indent = leadingSpaces(line);
  line.remove_prefix(indent + 1);
  if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
  return line;
}

struct ListMarker {
  bool ordered;
  char delimiter;  // bullet char or '.' / ')'
  int number;
  std::string_view content;
};

std::optional<ListMarker> listMarker(std::string_view line) {
  std::size_t indent = leadingSpaces(line);
  if (indent > 3 || indent >= line.size()) return std::nullopt;
  char c = line[indent];
  std::size_t after;
  ListMarker marker{false, c, 1, {}};
  if (c == '-' || c == '+' || c == '*') {
    after = indent + 1;
  } else if (std::isdigit(static_cast<unsigned char>(c))) {
    std::size_t d = indent;
    while (d < line.size() && std::isdigit(static_cast<unsigned char>(line[d]))) ++d;
    if (d - indent > 9 || d >= line.size() || (line[d] != '.' && line[d] != ')')) {
      return std::nullopt;
    }
    marker.ordered = true;
    marker.delimiter = line[d];
    marker.number = std::stoi(std::string(line.substr(indent, d - indent)));
    after = d + 1;
  } else {
    return std::nullopt;
  }
  if (after < line.size() && line[after] != ' ' && line[after] != '\t') return std::nullopt;
  marker.content = trim(line.substr(after));
  return marker;
}

bool startsBlock(std::string_view line) {
  return fenceOpen(line) || headingLine(line) || isQuoteLine(line) || listMarker(line);
}

std::vector<std::string_view> splitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  if (!lines.empty() && !lines.back().empty() && lines.back().back() == '\r') {
    lines.back().remove_suffix(1);
  }
  return lines;
}

std::vector<Block> parseBlocks(const std::vector<std::string_view>& lines) {
  std::vector<Block> blocks;
  std::size_t i = 0;
  while (i < lines.size()) {
    std::string_view line = lines[i];
    if (isBlank(line)) {
      ++i;
      continue;
    }
    if (auto fence = fenceOpen(line)) {
      CodeBlock block;
      block.info = fence->info;
      std::string code;
      bool first = true;
      ++i;
      while (i < lines.size() && !fenceCloses(lines[i], fence->length)) {
        std::string_view content = lines[i];
        std::size_t strip = std::min(fence->indent, leadingSpaces(content));
        content.remove_prefix(strip);
        if (!first) code.push_back('\n');
        code += content;
        first = false;
        ++i;
      }
      if (i < lines.size()) ++i;  // closing fence
      block.code = std::move(code);
      blocks.push_back({std::move(block)});
      continue;
    }
    if (auto heading = headingLine(line)) {
      blocks.push_back({Heading{heading->level, parseInlines(heading->content)}});
      ++i;
      continue;
    }
    if (isQuoteLine(line)) {
      std::vector<std::string_view> inner;
      while (i < lines.size() && isQuoteLine(lines[i])) inner.push_back(stripQuote(lines[i++]));
      blocks.push_back({BlockQuote{parseBlocks(inner)}});
      continue;
    }
    if (auto marker = listMarker(line)) {
      List list;
      list.ordered = marker->ordered;
      list.start = marker->number;
      std::string item(marker->content);
      ++i;
      auto finishItem = [&] {
        list.items.push_back(parseInlines(item));
        item.clear();
      };
      while (i < lines.size()) {
        std::string_view next = lines[i];
        if (isBlank(next)) break;
        if (auto m = listMarker(next)) {
          if (m->ordered != marker->ordered || m->delimiter != marker->delimiter) break;
          finishItem();
          item = std::string(m->content);
          ++i;
          continue;
        }
        if (startsBlock(next)) break;
        item.push_back('\n');
        item += trim(next);
        ++i;
      }
      finishItem();
      blocks.push_back({std::move(list)});
      continue;
    }
    std::string paragraph(trim(line));
    ++i;
    while (i < lines.size() && !isBlank(lines[i]) && !startsBlock(lines[i])) {
      paragraph.push_back('\n');
      paragraph += trim(lines[i]);
      ++i;
    }
    blocks.push_back({Paragraph{parseInlines(paragraph)}});
  }
  return blocks;
}

}  // namespace

bool isCitationKeyChar(char c) { return isAlnum(c) || c == '_' || c == '-'; }

TextAst parse(std::string_view text) {
  TextAst ast;
  ast.blocks = parseBlocks(splitLines(text));
  return ast;
}

}  // namespace smartreview::markdown
