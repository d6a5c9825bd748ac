#include "smartreview/markdown/markdown.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

using namespace smartreview::markdown;

namespace {

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

CitationResolver resolverFor(std::map<std::string, int> numbers) {
  return [numbers = std::move(numbers)](std::string_view key) -> std::optional<CitationTarget> {
    auto it = numbers.find(std::string(key));
    if (it == numbers.end()) return std::nullopt;
    return CitationTarget{it->second};
  };
}

const Paragraph& onlyParagraph(const TextAst& ast) {
  EXPECT_EQ(ast.blocks.size(), 1u);
  return std::get<Paragraph>(ast.blocks.at(0).node);
}

}  // namespace

TEST(MarkdownParse, BracketedCitationInParagraph) {
  TextAst ast = parse("As shown in [@R100].");
  const auto& p = onlyParagraph(ast);
  ASSERT_EQ(p.content.size(), 3u);
  EXPECT_EQ(std::get<Text>(p.content[0].node).text, "As shown in ");
  const auto& group = std::get<CitationGroup>(p.content[1].node);
  ASSERT_EQ(group.citations.size(), 1u);
  EXPECT_EQ(group.citations[0].key, "R100");
  EXPECT_EQ(group.citations[0].raw, "@R100");
  EXPECT_EQ(std::get<Text>(p.content[2].node).text, ".");
}

TEST(MarkdownParse, CitationGroupKeepsSourceOrder) {
  TextAst ast = parse("See [@R100; @R101]");
  const auto& group = std::get<CitationGroup>(onlyParagraph(ast).content.at(1).node);
  ASSERT_EQ(group.citations.size(), 2u);
  EXPECT_EQ(group.citations[0].key, "R100");
  EXPECT_EQ(group.citations[1].key, "R101");
  EXPECT_EQ(extractCitations(ast), (std::vector<std::string>{"R100", "R101"}));
}

TEST(MarkdownParse, BareCitation) {
  TextAst ast = parse("as @R100 argues, mail me at a@b.org");
  EXPECT_EQ(extractCitations(ast), (std::vector<std::string>{"R100"}));
  const auto& group = std::get<CitationGroup>(onlyParagraph(ast).content.at(1).node);
  EXPECT_FALSE(group.bracketed);
}

TEST(MarkdownParse, HeadingLevelOneIsDemoted) {
  TextAst ast = parse("# Title");
  ASSERT_EQ(ast.blocks.size(), 1u);
  const auto& h = std::get<Heading>(ast.blocks[0].node);
  EXPECT_EQ(h.level, 2);
  EXPECT_EQ(std::get<Text>(h.content.at(0).node).text, "Title");
}

TEST(MarkdownParse, HeadingLevelsClampToFour) {
  TextAst ast = parse("## a\n### b\n#### c\n##### d\n###### e ##");
  std::vector<int> levels;
  for (const auto& b : ast.blocks) levels.push_back(std::get<Heading>(b.node).level);
  EXPECT_EQ(levels, (std::vector<int>{2, 3, 4, 4, 4}));
  EXPECT_EQ(std::get<Text>(std::get<Heading>(ast.blocks[4].node).content.at(0).node).text, "e");
}

TEST(MarkdownParse, MalformedCitationsDegradeToText) {
  for (const char* text : {"[@]", "[@a;]", "[@a,@b]", "[@a; x]", "@", "x@y", "a.@b", "(@)"}) {
    TextAst ast = parse(text);
    EXPECT_TRUE(extractCitations(ast).empty()) << text;
  }
}

TEST(MarkdownParse, BlockStructure) {
  TextAst ast = parse(
      "Intro line one\nline two\n\n- a\n- b\n\n3. x\n4. y\n\n```cpp\nint x;\n```\n\n> quoted\n> "
      "more");
  ASSERT_EQ(ast.blocks.size(), 5u);
  const auto& p = std::get<Paragraph>(ast.blocks[0].node);
  ASSERT_EQ(p.content.size(), 3u);
  EXPECT_TRUE(std::holds_alternative<SoftBreak>(p.content[1].node));
  const auto& ul = std::get<List>(ast.blocks[1].node);
  EXPECT_FALSE(ul.ordered);
  EXPECT_EQ(ul.items.size(), 2u);
  const auto& ol = std::get<List>(ast.blocks[2].node);
  EXPECT_TRUE(ol.ordered);
  EXPECT_EQ(ol.start, 3);
  const auto& code = std::get<CodeBlock>(ast.blocks[3].node);
  EXPECT_EQ(code.info, "cpp");
  EXPECT_EQ(code.code, "int x;");
  const auto& quote = std::get<BlockQuote>(ast.blocks[4].node);
  ASSERT_EQ(quote.children.size(), 1u);
}

TEST(MarkdownParse, InlineConstructs) {
  TextAst ast =
      parse("*em* **strong** `co de` [link](http://x.org) <https://y.org> snake_case_word");
  EXPECT_EQ(debugString(ast),
            "P( EM{ T\"em\" } T\" \" STRONG{ T\"strong\" } T\" \" C\"co de\" T\" \" "
            "LINK<http://x.org>{ T\"link\" } T\" \" LINK<https://y.org>{ T\"https://y.org\" } "
            "T\" snake_case_word\" )\n");
}

TEST(MarkdownParse, RawHtmlIsPlainText) {
  TextAst ast = parse("a <b>bold</b> <script>x</script>");
  EXPECT_EQ(debugString(ast), "P( T\"a <b>bold</b> <script>x</script>\" )\n");
  std::string html = emitHtml(ast, {});
  EXPECT_EQ(html, "<p>a &lt;b&gt;bold&lt;/b&gt; &lt;script&gt;x&lt;/script&gt;</p>\n");
}

TEST(MarkdownParse, CitationsInsideCodeAreNotCitations) {
  EXPECT_TRUE(extractCitations(parse("`[@R1]`\n\n```\n[@R2]\n```")).empty());
}

TEST(MarkdownExtract, DuplicatesRemovedInFirstAppearanceOrder) {
  TextAst ast = parse("[@R100] then [@R101; @R100] and *@R102*");
  EXPECT_EQ(extractCitations(ast), (std::vector<std::string>{"R100", "R101", "R102"}));
  EXPECT_TRUE(extractCitations(parse("no citations here")).empty());
}

TEST(MarkdownExtract, ContinuesAcrossSections) {
  std::vector<std::string> ordered;
  extractCitations(parse("[@B] [@A]"), ordered);
  extractCitations(parse("[@C; @A]"), ordered);
  EXPECT_EQ(ordered, (std::vector<std::string>{"B", "A", "C"}));
}

TEST(MarkdownHtml, ResolvedCitationIsNumberedAnchor) {
  std::string html = emitHtml(parse("[@R100]"), resolverFor({{"R100", 1}}));
  EXPECT_EQ(html,
            "<p><a href=\"#ref-R100\" class=\"citation\" role=\"doc-biblioref\">[1]</a></p>\n");
}

TEST(MarkdownHtml, UnresolvedCitationKeepsKeyWithMarker) {
  std::string html = emitHtml(parse("[@badkey]"), resolverFor({}));
  EXPECT_NE(html.find("[@badkey]"), std::string::npos);
  EXPECT_NE(html.find("data-unresolved=\"true\""), std::string::npos);
}

TEST(MarkdownHtml, EmptyAstGivesEmptyFragment) {
  EXPECT_EQ(emitHtml(TextAst{}, resolverFor({})), "");
  EXPECT_EQ(emitHtml(parse(""), resolverFor({})), "");
  EXPECT_EQ(toMarkdown(TextAst{}), "");
}

TEST(MarkdownHtml, HeadingsNeverSkipLevels) {
  TextAst ast = parse("#### deep\n\n## top\n\n#### deep again");
  std::string html = emitHtml(ast, {}, HtmlOptions{1, 2});
  EXPECT_EQ(html, "<h3>deep</h3>\n<h3>top</h3>\n<h4>deep again</h4>\n");
}

TEST(MarkdownHtml, NumberingStableAcrossRenders) {
  TextAst ast = parse("[@b] [@a] [@b]");
  auto keys = extractCitations(ast);
  std::map<std::string, int> numbers;
  for (std::size_t i = 0; i < keys.size(); ++i) numbers[keys[i]] = static_cast<int>(i + 1);
  std::string first = emitHtml(ast, resolverFor(numbers));
  std::string second = emitHtml(parse(toMarkdown(ast)), resolverFor(numbers));
  EXPECT_EQ(first, second);
  EXPECT_NE(first.find("#ref-b\" class=\"citation\" role=\"doc-biblioref\">[1]"),
            std::string::npos);
}

TEST(MarkdownText, WordCountIgnoresMarkupAndCitations) {
  EXPECT_EQ(wordCount(parse("## Two words\n\nOne *two* `three` [@R1] four.")), 6u);
}

// Golden files: NAME.md is parsed; NAME.html and NAME.norm.md are the expected
// HTML (citations R100 -> 1, R101 -> 2) and canonical Markdown.
TEST(MarkdownGolden, Files) {
  auto dir = std::filesystem::path(SMARTREVIEW_TEST_DATA_DIR) / "markdown";
  auto resolver = resolverFor({{"R100", 1}, {"R101", 2}});
  int checked = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    auto path = entry.path();
    std::string name = path.filename().string();
    if (path.extension() != ".md" || name.ends_with(".norm.md")) continue;
    auto stem = path.parent_path() / path.stem();
    TextAst ast = parse(readFile(path));
    EXPECT_EQ(emitHtml(ast, resolver), readFile(stem.string() + ".html")) << name;
    EXPECT_EQ(toMarkdown(ast), readFile(stem.string() + ".norm.md")) << name;
    ++checked;
  }
  EXPECT_GE(checked, 4);
}

namespace {

// Random documents drawn from fragments that exercise every construct and
// the awkward seams between them.
std::string randomDocument(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {"a",
                                                  "b",
                                                  "word",
                                                  " ",
                                                  " ",
                                                  "  ",
                                                  "\n",
                                                  "\n",
                                                  "\n\n",
                                                  "*",
                                                  "**",
                                                  "***",
                                                  "_",
                                                  "__",
                                                  "`",
                                                  "``",
                                                  "```",
                                                  "[",
                                                  "]",
                                                  "(",
                                                  ")",
                                                  "[@R1]",
                                                  "[@R1; @R2]",
                                                  "@R3",
                                                  "@",
                                                  ";",
                                                  "-",
                                                  "+",
                                                  "1.",
                                                  "2)",
                                                  "#",
                                                  "## ",
                                                  "> ",
                                                  ">",
                                                  "\\",
                                                  "\\*",
                                                  "<",
                                                  ">",
                                                  "<http://x.y/z>",
                                                  "[t](http://u.v)",
                                                  "](u)",
                                                  "!",
                                                  ".",
                                                  ",",
                                                  "x_y",
                                                  "é",
                                                  "\t",
                                                  "- ",
                                                  "1. ",
                                                  "```c\n",
                                                  "\r\n",
                                                  "0",
                                                  "9."};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(1, 40);
  std::string doc;
  for (int i = len(rng); i > 0; --i) doc += pieces[pick(rng)];
  return doc;
}

}  // namespace

TEST(MarkdownProperty, RoundTripIsStable) {
  std::mt19937 rng(20210504);
  int failures = 0;
  for (int i = 0; i < 20000 && failures < 5; ++i) {
    std::string doc = randomDocument(rng);
    TextAst once = parse(doc);
    std::string canonical = toMarkdown(once);
    TextAst twice = parse(canonical);
    if (twice != once) {
      ++failures;
      ADD_FAILURE() << "source:    " << ::testing::PrintToString(doc)
                    << "\ncanonical: " << ::testing::PrintToString(canonical) << "\nfirst:\n"
                    << debugString(once) << "second:\n"
                    << debugString(twice);
    }
    EXPECT_EQ(toMarkdown(twice), canonical);
  }
}
