#include "smartreview/render/render.hpp"

#include <gtest/gtest.h>

#include <regex>

#include "html_check.hpp"
#include "smartreview/article/document.hpp"
#include "smartreview/article/fixture.hpp"
#include "smartreview/graph/vocabulary.hpp"
#include "smartreview/versioning/versioning.hpp"
#include "test_support.hpp"

using namespace smartreview;
using namespace smartreview::render;
using article::NaturalText;
using smartreview::testing::at;
using smartreview::testing::checkWellFormed;
using smartreview::testing::countOccurrences;
using smartreview::testing::expectError;
using smartreview::testing::headingLevels;
namespace vocab = graph::vocab;

namespace {

EntityId R(std::string_view key) { return EntityId::resource(std::string(key)); }
const EntityId kReview = R(vocab::kShowcaseReview);
const EntityId kField = R(vocab::kInformationScience);

graph::GraphView headOf(graph::Store& store, const EntityId& id) {
  return store.read([&](const graph::GraphState& g) { return article::ops::articleView(g, id); });
}

void expectAccessible(const std::string& html) {
  EXPECT_EQ(checkWellFormed(html), std::nullopt);
  auto levels = headingLevels(html);
  ASSERT_FALSE(levels.empty());
  EXPECT_EQ(levels.front(), 1);
  EXPECT_EQ(std::count(levels.begin(), levels.end(), 1), 1);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    EXPECT_LE(levels[i], levels[i - 1] + 1) << "skip at heading " << i;
  }
  EXPECT_NE(html.find("<html lang=\"en\">"), std::string::npos);
  for (auto tag : {"<main>", "<nav ", "<article>", "<header>", "<footer>", "<section "}) {
    EXPECT_NE(html.find(tag), std::string::npos) << tag;
  }
}

struct RenderTest : ::testing::Test {
  graph::Store store;
  void SetUp() override {
    for (auto u : {"u1", "u2", "u3", "u4"}) store.registerUser(u);
  }
};

}  // namespace

TEST(ReadingTime, CeilingOf250WordsPerMinute) {
  EXPECT_EQ(readingTimeMinutes(0), 0);
  EXPECT_EQ(readingTimeMinutes(1), 1);
  EXPECT_EQ(readingTimeMinutes(250), 1);
  EXPECT_EQ(readingTimeMinutes(251), 2);
  EXPECT_EQ(readingTimeMinutes(500), 2);
}

TEST(HtmlCheck, RejectsBrokenMarkup) {
  EXPECT_EQ(checkWellFormed("<p>a <em>b</em></p>"), std::nullopt);
  EXPECT_NE(checkWellFormed("<p>a <em>b</p></em>"), std::nullopt);
  EXPECT_NE(checkWellFormed("<p>"), std::nullopt);
  EXPECT_NE(checkWellFormed("<p class=x></p>"), std::nullopt);
  EXPECT_NE(checkWellFormed("a & b"), std::nullopt);
  EXPECT_EQ(checkWellFormed("<meta charset=\"utf-8\" /><script>if (a<b) {}</script>"),
            std::nullopt);
}

TEST_F(RenderTest, FixtureDocumentStructure) {
  article::seedFixture(store);
  auto rendered = renderArticle(headOf(store, kReview), kReview);
  const auto& html = rendered.html;
  expectAccessible(html);
  EXPECT_EQ(countOccurrences(html, "<table class=\"comparison\""), 3u);
  EXPECT_EQ(countOccurrences(html, "<h1>"), 1u);
  EXPECT_NE(html.find("<h1>Scholarly Knowledge Graphs</h1>"), std::string::npos);
  EXPECT_NE(html.find("application/ld+json"), std::string::npos);
  EXPECT_EQ(rendered.contributors, std::vector<std::string>{"fixture"});

  // Headers: paper titles across, property labels down.
  EXPECT_NE(html.find("<th scope=\"col\">Crowdsourcing Structured Descriptions of Research "
                      "Contributions</th>"),
            std::string::npos);
  EXPECT_NE(html.find("<th scope=\"row\">research problem</th>"), std::string::npos);
  EXPECT_NE(html.find("Scholarly Communication</span>"), std::string::npos);

  // Outline: every section plus references and acknowledgements.
  EXPECT_EQ(rendered.outline.size(), 10u);
  EXPECT_EQ(rendered.outline.front().anchor, "section-R48001");
  for (const auto& entry : rendered.outline) {
    EXPECT_NE(html.find("id=\"" + entry.anchor + "\""), std::string::npos) << entry.anchor;
  }
}

TEST_F(RenderTest, VisualizationHasFallbackSpecAndAlt) {
  article::seedFixture(store);
  auto html = renderArticle(headOf(store, kReview), kReview).html;
  std::regex alt("role=\"img\" aria-label=\"([^\"]*)\"");
  auto begin = std::sregex_iterator(html.begin(), html.end(), alt);
  int count = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it, ++count) {
    EXPECT_FALSE((*it)[1].str().empty());
    EXPECT_NE((*it)[1].str().find("Number of entities described by each platform"),
              std::string::npos);
  }
  EXPECT_EQ(count, 1);
  EXPECT_EQ(countOccurrences(html, "<table class=\"visualization-data\">"), 1u);
  EXPECT_NE(html.find("application/vnd.smartreview.chart+json"), std::string::npos);
  EXPECT_NE(html.find("\"chart\":\"BarChart\""), std::string::npos);
  EXPECT_NE(html.find("<td>13000000</td>"), std::string::npos);
}

// Numbers follow first appearance across sections: the introduction cites
// 44001, 44002, 44004, 44007, 44013, the conclusion then adds 44003, 44006,
// 44011.
TEST_F(RenderTest, CitationNumberingIsGlobalAndStable) {
  article::seedFixture(store);
  auto view = headOf(store, kReview);
  auto html = renderArticle(view, kReview).html;
  const std::vector<std::string> order = {"R44001", "R44002", "R44004", "R44007",
                                          "R44013", "R44003", "R44006", "R44011"};
  std::size_t last = 0;
  for (std::size_t n = 0; n < order.size(); ++n) {
    auto link = "<a href=\"#ref-" + order[n] + "\" class=\"citation\" role=\"doc-biblioref\">[" +
                std::to_string(n + 1) + "]</a>";
    EXPECT_NE(html.find(link), std::string::npos) << link;
    auto item = html.find("<li id=\"ref-" + order[n] + "\">");
    ASSERT_NE(item, std::string::npos);
    EXPECT_GT(item, last);
    last = item;
  }
  EXPECT_EQ(renderArticle(view, kReview).html, html);
}

TEST_F(RenderTest, EmptyArticleAndUnresolvedCitations) {
  auto a = store.write([&](graph::GraphState& g) {
    return article::ops::createArticle(g, "Bare <Article>", kField, at("u1", 1)).id;
  });
  auto rendered = renderArticle(headOf(store, a), a);
  expectAccessible(rendered.html);
  EXPECT_NE(rendered.html.find("<ol class=\"references\">\n</ol>"), std::string::npos);
  EXPECT_EQ(rendered.readingTimeMinutes, 0);
  EXPECT_NE(rendered.html.find("Bare &lt;Article&gt;"), std::string::npos);

  store.write([&](graph::GraphState& g) {
    article::ops::addSection(
        g, a, 0, "Text", NaturalText{"Introduction", "# Big\n\nSee [@R404] and more.\n\n### Deep"},
        at("u2", 2));
  });
  rendered = renderArticle(headOf(store, a), a);
  expectAccessible(rendered.html);
  EXPECT_NE(rendered.html.find("data-unresolved=\"true\""), std::string::npos);
  EXPECT_NE(rendered.html.find("<h3>Big</h3>"), std::string::npos);
  EXPECT_NE(rendered.html.find("<h4>Deep</h4>"), std::string::npos);
  EXPECT_EQ(rendered.readingTimeMinutes, 1);
  expectError(ErrorCode::UnknownArticle, [&] { renderArticle(headOf(store, a), R("R44001")); });
}

TEST_F(RenderTest, ReadingTimeCountsTextSectionsOnly) {
  auto a = store.write([&](graph::GraphState& g) {
    auto id = article::ops::createArticle(g, "Words", kField, at("u1", 1)).id;
    std::string text;
    for (int i = 0; i < 251; ++i) text += "word ";
    article::ops::addSection(g, id, 0, "T", NaturalText{"Introduction", text}, at("u1", 2));
    return id;
  });
  auto view = headOf(store, a);
  EXPECT_EQ(articleWordCount(view, a), 251u);
  EXPECT_EQ(renderArticle(view, a).readingTimeMinutes, 2);
}

TEST_F(RenderTest, AcknowledgementsFollowFirstContribution) {
  auto a = store.write([&](graph::GraphState& g) {
    return article::ops::createArticle(g, "Team", kField, at("u2", 10)).id;
  });
  auto s = store.write([&](graph::GraphState& g) {
    return article::ops::addSection(g, a, 0, "One", NaturalText{"Introduction", "x"}, at("u1", 20))
        .id;
  });
  store.write([&](graph::GraphState& g) {
    article::ops::updateSection(g, s, std::string("One!"), std::nullopt, at("u2", 30));
    article::ops::addSection(g, a, 1, "Two", NaturalText{"Discussion", "y"}, at("u3", 40));
  });
  // u4 works on another article only.
  store.write([&](graph::GraphState& g) {
    auto other = article::ops::createArticle(g, "Other", kField, at("u4", 5)).id;
    article::ops::addSection(g, other, 0, "Z", NaturalText{"Introduction", "z"}, at("u4", 50));
  });
  auto view = headOf(store, a);
  EXPECT_EQ(acknowledgements(view, a), (std::vector<std::string>{"u2", "u1", "u3"}));
  RenderOptions options;
  options.displayName = [](const std::string& u) { return "User " + u; };
  auto html = renderArticle(view, a, options).html;
  EXPECT_NE(html.find("<li>User u2</li>\n<li>User u1</li>\n<li>User u3</li>"), std::string::npos);
  EXPECT_EQ(html.find("u4"), std::string::npos);
}

TEST(Acknowledgements, TiesBreakByStatementId) {
  auto stamp = at("x", 1).timestamp;
  auto st = [&](std::uint64_t id, std::string user, long long tick) {
    graph::Statement s;
    s.id = graph::StatementId{id};
    s.provenance = {std::move(user), stamp + std::chrono::milliseconds(tick)};
    return s;
  };
  EXPECT_EQ(acknowledgements({st(5, "b", 0), st(3, "a", 0), st(1, "c", 1), st(9, "b", -1)}),
            (std::vector<std::string>{"b", "a", "c"}));
  EXPECT_TRUE(acknowledgements(std::vector<graph::Statement>{}).empty());
}

TEST_F(RenderTest, SnapshotRenderIsFrozen) {
  article::seedFixture(store);
  versioning::Versions versions(store);
  auto v1 = versions.publish(kReview, "", at("u1", 1));
  RenderOptions options;
  options.versionLabel = "Version 1";
  auto atPublish = renderArticle(v1->fullView(), kReview, options).html;
  EXPECT_EQ(atPublish, renderArticle(headOf(store, kReview), kReview, options).html);

  store.write([&](graph::GraphState& g) {
    article::ops::updateSection(g, R("R48001"), std::string("Changed"), std::nullopt, at("u2", 2));
    article::ops::describeEntity(g, EntityId::predicate("P32"), "changed description", std::nullopt,
                                 at("u2", 3));
  });
  auto later = versions.get(kReview, 1);
  EXPECT_EQ(renderArticle(later->fullView(), kReview, options).html, atPublish);
  EXPECT_NE(renderArticle(headOf(store, kReview), kReview, options).html, atPublish);
}

TEST_F(RenderTest, ComparisonCsvDownload) {
  article::seedFixture(store);
  auto csv = comparisonCsv(store.headView(), R("R46002"));
  auto rows = article::parseCsv(csv);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].size(), 5u);
  EXPECT_EQ(rows[0][0], "Property");
  EXPECT_EQ(rows[0][1], "Nanopublications for Incremental Scholarly Claims");
  EXPECT_EQ(rows[3][0], "data model");
  EXPECT_EQ(rows[3][4], "Relational tables; notebooks, containers");
  EXPECT_EQ(rows[2][4], "");
}
