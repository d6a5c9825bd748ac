#include <algorithm>
#include <cctype>
#include <set>

#include "smartreview/error.hpp"
#include "smartreview/sparql/sparql.hpp"

namespace smartreview::sparql {

namespace {

enum class Tok { Iri, PName, Var, String, Number, Word, Punct, LangTag, End };

struct Token {
  Tok kind;
  std::string text;  // IRI body, prefixed name, var name, unescaped string, word, punct
  std::size_t pos;
};

bool isNameStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool isNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

[[noreturn]] void syntax(const std::string& message, std::size_t pos) {
  throw LocatedError(ErrorCode::SyntaxError,
                     "syntax error at offset " + std::to_string(pos) + ": " + message, pos);
}

[[noreturn]] void unsupported(const std::string& feature, std::size_t pos) {
  throw LocatedError(ErrorCode::UnsupportedFeature,
                     "unsupported SPARQL feature " + feature + " at offset " + std::to_string(pos),
                     pos);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

const std::set<std::string>& unsupportedKeywords() {
  static const std::set<std::string> words = {
      "OPTIONAL", "FILTER",       "UNION",  "LIMIT",    "OFFSET",  "ORDER",   "GROUP",
      "HAVING",   "BIND",         "VALUES", "MINUS",    "SERVICE", "GRAPH",   "FROM",
      "NAMED",    "CONSTRUCT",    "ASK",    "DESCRIBE", "BASE",    "REDUCED", "INSERT",
      "DELETE",   "LOAD",         "CLEAR",  "DROP",     "CREATE",  "WITH",    "EXISTS",
      "NOT",      "AS",           "COUNT",  "SUM",      "MIN",     "MAX",     "AVG",
      "SAMPLE",   "GROUP_CONCAT", "USING",  "COPY",     "MOVE",    "ADD"};
  return words;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipSpace();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", pos_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skipSpace() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  Token next() {
    std::size_t start = pos_;
    char c = text_[pos_];
    if (c == '<') {
      std::size_t end = text_.find('>', pos_);
      std::size_t space = text_.find_first_of(" \t\r\n\"{}|^`\\", pos_);
      if (end == std::string_view::npos || (space != std::string_view::npos && space < end)) {
        // `<` not starting an IRI is an expression operator.
        unsupported("expressions", start);
      }
      pos_ = end + 1;
      return {Tok::Iri, std::string(text_.substr(start + 1, end - start - 1)), start};
    }
    if (c == '?' || c == '$') {
      ++pos_;
      std::size_t nameStart = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      if (pos_ == nameStart) unsupported("property paths", start);
      return {Tok::Var, std::string(text_.substr(nameStart, pos_ - nameStart)), start};
    }
    if (c == '"' || c == '\'') return string(c);
    if (c == '@') {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
        ++pos_;
      }
      return {Tok::LangTag, std::string(text_.substr(start, pos_ - start)), start};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '+' || c == '-') && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        unsupported("decimal literals", start);
      }
      return {Tok::Number, std::string(text_.substr(start, pos_ - start)), start};
    }
    if (c == '^' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '^') {
      pos_ += 2;
      return {Tok::Punct, "^^", start};
    }
    if (isNameStart(c) || c == ':') {
      while (pos_ < text_.size() && isNameChar(text_[pos_])) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == ':') {
        ++pos_;
        localName();
        return {Tok::PName, std::string(text_.substr(start, pos_ - start)), start};
      }
      // A trailing '.' belongs to the triple terminator, not the word.
      while (pos_ > start + 1 && text_[pos_ - 1] == '.') --pos_;
      return {Tok::Word, std::string(text_.substr(start, pos_ - start)), start};
    }
    ++pos_;
    return {Tok::Punct, std::string(1, c), start};
  }

  void localName() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
          c == '.') {
        ++pos_;
      } else if (c == '%' && pos_ + 2 < text_.size() &&
                 std::isxdigit(static_cast<unsigned char>(text_[pos_ + 1])) &&
                 std::isxdigit(static_cast<unsigned char>(text_[pos_ + 2]))) {
        pos_ += 3;
      } else {
        break;
      }
    }
    while (text_[pos_ - 1] == '.') --pos_;
  }

  Token string(char quote) {
    std::size_t start = pos_;
    if (text_.substr(pos_, 3) == std::string(3, quote)) unsupported("long string literals", start);
    ++pos_;
    std::string value;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') syntax("unterminated string", start);
      char c = text_[pos_++];
      if (c == quote) break;
      if (c != '\\') {
        value += c;
        continue;
      }
      if (pos_ >= text_.size()) syntax("unterminated string", start);
      char e = text_[pos_++];
      switch (e) {
        case 't':
          value += '\t';
          break;
        case 'n':
          value += '\n';
          break;
        case 'r':
          value += '\r';
          break;
        case 'b':
          value += '\b';
          break;
        case 'f':
          value += '\f';
          break;
        case '"':
          value += '"';
          break;
        case '\'':
          value += '\'';
          break;
        case '\\':
          value += '\\';
          break;
        default:
          syntax(std::string("bad escape \\") + e, pos_ - 2);
      }
    }
    return {Tok::String, value, start};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const rdf::UriMapping& mapping) : tokens_(std::move(tokens)) {
    plan_.prefixes = defaultPrefixes(mapping);
  }

  QueryPlan run() {
    while (isWord("PREFIX")) prefixDecl();
    if (isWord("BASE")) unsupported("BASE", peek().pos);
    if (!isWord("SELECT")) {
      if (peek().kind == Tok::Word && unsupportedKeywords().count(upper(peek().text))) {
        unsupported(upper(peek().text), peek().pos);
      }
      syntax("expected SELECT", peek().pos);
    }
    take();
    if (isWord("DISTINCT")) {
      take();
      plan_.distinct = true;
    } else if (isWord("REDUCED")) {
      unsupported("REDUCED", peek().pos);
    }
    bool star = false;
    std::size_t projectionPos = peek().pos;
    if (isPunct("*")) {
      take();
      star = true;
    } else {
      while (peek().kind == Tok::Var) plan_.projection.push_back(take().text);
      if (isPunct("(")) unsupported("projection expressions", peek().pos);
      if (plan_.projection.empty()) syntax("expected variables or *", peek().pos);
    }
    if (isWord("FROM")) unsupported("FROM", peek().pos);
    if (isWord("WHERE")) take();
    expectPunct("{");
    groupBody();
    expectPunct("}");
    if (peek().kind != Tok::End) {
      if (peek().kind == Tok::Word && unsupportedKeywords().count(upper(peek().text))) {
        unsupported(upper(peek().text), peek().pos);
      }
      syntax("unexpected trailing input", peek().pos);
    }

    std::vector<std::string> mentioned;
    for (const auto& p : plan_.patterns) {
      for (const Term* t : {&p.subject, &p.predicate, &p.object}) {
        if (const auto* v = std::get_if<Variable>(t)) {
          if (std::find(mentioned.begin(), mentioned.end(), v->name) == mentioned.end()) {
            mentioned.push_back(v->name);
          }
        }
      }
    }
    if (star) {
      plan_.projection = mentioned;
    } else {
      for (const auto& v : plan_.projection) {
        if (std::find(mentioned.begin(), mentioned.end(), v) == mentioned.end()) {
          syntax("projected variable ?" + v + " does not occur in the pattern", projectionPos);
        }
      }
    }
    return std::move(plan_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(index_ + ahead, tokens_.size() - 1)];
  }
  Token take() { return tokens_[std::min(index_++, tokens_.size() - 1)]; }

  bool isWord(std::string_view word) const {
    return peek().kind == Tok::Word && upper(peek().text) == word;
  }
  bool isPunct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }

  void expectPunct(std::string_view p) {
    if (!isPunct(p)) {
      if (peek().kind == Tok::Word && unsupportedKeywords().count(upper(peek().text))) {
        unsupported(upper(peek().text), peek().pos);
      }
      syntax("expected '" + std::string(p) + "'", peek().pos);
    }
    take();
  }

  void prefixDecl() {
    take();
    Token name = take();
    if (name.kind != Tok::PName || name.text.back() != ':')
      syntax("expected prefix name", name.pos);
    Token iri = take();
    if (iri.kind != Tok::Iri) syntax("expected IRI", iri.pos);
    plan_.prefixes[name.text.substr(0, name.text.size() - 1)] = iri.text;
  }

  void groupBody() {
    while (!isPunct("}")) {
      if (peek().kind == Tok::End) syntax("unterminated group", peek().pos);
      if (isPunct("{")) unsupported("nested groups", peek().pos);
      if (peek().kind == Tok::Word && unsupportedKeywords().count(upper(peek().text))) {
        unsupported(upper(peek().text), peek().pos);
      }
      Term subject = term(Position::Subject);
      propertyList(subject);
      if (isPunct(".")) {
        take();
      } else if (!isPunct("}")) {
        if (peek().kind == Tok::Word && unsupportedKeywords().count(upper(peek().text))) {
          unsupported(upper(peek().text), peek().pos);
        }
        syntax("expected '.' or '}'", peek().pos);
      }
    }
  }

  void propertyList(const Term& subject) {
    while (true) {
      Term predicate = term(Position::Predicate);
      if (peek().kind == Tok::Punct) {
        const auto& op = peek().text;
        if (op == "/" || op == "|" || op == "^" || op == "*" || op == "+" || op == "?") {
          unsupported("property paths", peek().pos);
        }
      }
      while (true) {
        Term object = term(Position::Object);
        plan_.patterns.push_back({subject, predicate, object});
        if (!isPunct(",")) break;
        take();
      }
      if (!isPunct(";")) return;
      while (isPunct(";")) take();
      if (isPunct(".") || isPunct("}")) return;
    }
  }

  enum class Position { Subject, Predicate, Object };

  Term term(Position position) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Var:
        return Variable{take().text};
      case Tok::Iri:
        return Iri{take().text};
      case Tok::PName:
        if (t.text.starts_with("_:")) unsupported("blank nodes", t.pos);
        return Iri{expand(take())};
      case Tok::String:
      case Tok::Number:
        if (position != Position::Object) syntax("literal outside object position", t.pos);
        return literal();
      case Tok::Word: {
        std::string word = upper(t.text);
        if (t.text == "a" && position == Position::Predicate) {
          take();
          return Iri{std::string(rdf::kRdfNs) + "type"};
        }
        if ((word == "TRUE" || word == "FALSE") && position == Position::Object) {
          take();
          return Literal{word == "TRUE" ? "true" : "false", std::string(rdf::kXsdNs) + "boolean"};
        }
        if (unsupportedKeywords().count(word)) unsupported(word, t.pos);
        syntax("unexpected '" + t.text + "'", t.pos);
      }
      case Tok::Punct:
        if (t.text == "[" || t.text == "_") unsupported("blank nodes", t.pos);
        if (t.text == "(") unsupported("collections", t.pos);
        if (position == Position::Predicate &&
            (t.text == "^" || t.text == "!" || t.text == "|" || t.text == "/")) {
          unsupported("property paths", t.pos);
        }
        syntax("unexpected '" + t.text + "'", t.pos);
      case Tok::LangTag:
        unsupported("language tags", t.pos);
      case Tok::End:
        syntax("unexpected end of query", t.pos);
    }
    syntax("unexpected token", t.pos);
  }

  Term literal() {
    Token value = take();
    if (value.kind == Tok::Number) {
      return Literal{value.text, std::string(rdf::kXsdNs) + "integer"};
    }
    if (peek().kind == Tok::LangTag) unsupported("language tags", peek().pos);
    if (!isPunct("^^")) return Literal{value.text, std::nullopt};
    take();
    Token type = take();
    if (type.kind == Tok::Iri) return Literal{value.text, type.text};
    if (type.kind == Tok::PName) return Literal{value.text, expand(type)};
    syntax("expected datatype IRI", type.pos);
  }

  std::string expand(const Token& pname) {
    std::size_t colon = pname.text.find(':');
    std::string prefix = pname.text.substr(0, colon);
    auto it = plan_.prefixes.find(prefix);
    if (it == plan_.prefixes.end()) {
      throw LocatedError(
          ErrorCode::UnknownPrefix,
          "undeclared prefix '" + prefix + ":' at offset " + std::to_string(pname.pos), pname.pos);
    }
    return it->second + pname.text.substr(colon + 1);
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  QueryPlan plan_;
};

}  // namespace

std::map<std::string, std::string> defaultPrefixes(const rdf::UriMapping& mapping) {
  return {{"orkgr", mapping.bases().resource}, {"orkgp", mapping.bases().predicate},
          {"orkgc", mapping.bases().klass},    {"rdf", std::string(rdf::kRdfNs)},
          {"rdfs", std::string(rdf::kRdfsNs)}, {"xsd", std::string(rdf::kXsdNs)}};
}

QueryPlan parseQuery(std::string_view text, const rdf::UriMapping& mapping) {
  return Parser(Lexer(text).run(), mapping).run();
}

}  // namespace smartreview::sparql
