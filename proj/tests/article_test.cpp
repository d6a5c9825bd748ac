#include "smartreview/article/article.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "smartreview/graph/vocabulary.hpp"
#include "smartreview/sparql/sparql.hpp"
#include "test_support.hpp"

using namespace smartreview;
using namespace smartreview::article;
using graph::EntityKind;
using graph::LiteralValue;
using smartreview::testing::at;
using smartreview::testing::expectError;
namespace vocab = graph::vocab;

namespace {

EntityId P(std::string_view key) { return EntityId::predicate(std::string(key)); }
EntityId R(std::string_view key) { return EntityId::resource(std::string(key)); }
const EntityId kField = R(vocab::kInformationScience);

struct Fixture : ::testing::Test {
  graph::Store store;
  Articles articles{store};

  void SetUp() override {
    for (auto u : {"u1", "u2", "u3"}) store.registerUser(u);
  }

  std::vector<std::string> query(const std::string& text) {
    auto view = store.headView();
    auto table = sparql::execute(sparql::parseQuery(text), view);
    std::vector<std::string> out;
    for (const auto& row : table.rows) out.push_back(row.at(0).key);
    return out;
  }

  // Paper with one contribution plus a comparison over it.
  std::pair<Paper, Comparison> paperAndComparison(const std::vector<EntityId>& properties,
                                                  const std::vector<CellInput>& cells = {}) {
    auto paper = articles.createPaper({"A paper", {"Ann", "Bo"}, "2020"}, at("u1", 1));
    auto c = articles.createComparison("Cmp", {{paper.id, paper.contributions.at(0)}}, properties,
                                       cells, at("u1", 2));
    return {paper, c};
  }
};

const char* kQuery1 =
    "SELECT DISTINCT ?smartReview WHERE { ?smartReview a orkgc:SmartReview; orkgp:P30 "
    "orkgr:R278. }";

}  // namespace

TEST_F(Fixture, CreateArticleIsQueryable) {
  auto a = articles.createArticle("Scholarly Knowledge Graphs", kField, at("u1", 0));
  EXPECT_EQ(query(kQuery1), std::vector<std::string>{a.id.key});
  auto read = articles.article(a.id);
  EXPECT_EQ(read.title, "Scholarly Knowledge Graphs");
  EXPECT_EQ(read.researchField, kField);
  EXPECT_EQ(read.contribution, a.contribution);
  EXPECT_TRUE(read.sections.empty());
}

TEST_F(Fixture, CreateArticleWithUnknownField) {
  expectError(ErrorCode::UnknownEntity,
              [&] { articles.createArticle("T", R("R999999999"), at("u1", 0)); });
}

TEST_F(Fixture, TwoArticlesBothReturnedOnce) {
  // Oracle: the articles typed SmartReview with P30 R278, read straight from
  // the statement list.
  auto a = articles.createArticle("A", kField, at("u1", 0));
  auto b = articles.createArticle("B", kField, at("u1", 1));
  std::vector<std::string> expected;
  for (const auto& s : store.getStatements({std::nullopt, P(vocab::kResearchField), kField})) {
    expected.push_back(s.subject().key);
  }
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(expected, (std::vector<std::string>{a.id.key, b.id.key}));
  EXPECT_EQ(query(kQuery1), expected);
}

TEST_F(Fixture, IntroductionSectionMatchesQuery3Pattern) {
  auto a = articles.createArticle("A", kField, at("u1", 0));
  auto s = articles.addSection(a.id, 0, "Introduction", NaturalText{"Introduction", "Hello"},
                               at("u1", 1));
  auto rows = query(
      "SELECT ?section WHERE { ?review a orkgc:SmartReview; orkgp:P31 ?contrib. ?contrib "
      "orkgp:HasSection ?section. ?section a orkgc:Introduction. }");
  EXPECT_EQ(rows, std::vector<std::string>{s.id.key});
}

TEST_F(Fixture, AddSectionValidation) {
  auto a = articles.createArticle("A", kField, at("u1", 0));
  expectError(ErrorCode::InvalidPosition, [&] {
    articles.addSection(a.id, 5, "x", NaturalText{"Introduction", ""}, at("u1", 1));
  });
  expectError(ErrorCode::UnknownDeoType, [&] {
    articles.addSection(a.id, 0, "x", NaturalText{"NotADeoTerm", ""}, at("u1", 1));
  });
  expectError(ErrorCode::UnknownArticle, [&] {
    articles.addSection(kField, 0, "x", NaturalText{"Introduction", ""}, at("u1", 1));
  });
  expectError(ErrorCode::DanglingReference,
              [&] { articles.addSection(a.id, 0, "x", ComparisonRef{R("R1")}, at("u1", 1)); });
  EXPECT_TRUE(articles.article(a.id).sections.empty());
}

TEST_F(Fixture, SectionOrderInsertReorderDelete) {
  auto a = articles.createArticle("A", kField, at("u1", 0));
  auto s1 = articles.addSection(a.id, 0, "one", NaturalText{"Introduction", "1"}, at("u1", 1));
  auto s3 = articles.addSection(a.id, 1, "three", NaturalText{"Conclusion", "3"}, at("u1", 2));
  auto s2 = articles.addSection(a.id, 1, "two", NaturalText{"Methods", "2"}, at("u1", 3));
  auto ids = [&] {
    std::vector<EntityId> out;
    for (const auto& s : articles.article(a.id).sections) out.push_back(s.id);
    return out;
  };
  EXPECT_EQ(ids(), (std::vector<EntityId>{s1.id, s2.id, s3.id}));
  // Permutation (3,1,2).
  articles.reorderSections(a.id, {s3.id, s1.id, s2.id}, at("u1", 4));
  EXPECT_EQ(ids(), (std::vector<EntityId>{s3.id, s1.id, s2.id}));
  expectError(ErrorCode::InvalidPosition,
              [&] { articles.reorderSections(a.id, {s3.id, s1.id}, at("u1", 5)); });
  articles.deleteSection(s1.id, at("u1", 6));
  EXPECT_EQ(ids(), (std::vector<EntityId>{s3.id, s2.id}));
  expectError(ErrorCode::UnknownSection, [&] { articles.deleteSection(s1.id, at("u1", 7)); });
}

TEST_F(Fixture, OrderSurvivesRestart) {
  auto dir = smartreview::testing::freshTempDir("article-order");
  EntityId articleId, first, second;
  {
    graph::Store disk(dir / "store.log");
    disk.registerUser("u1");
    Articles a(disk);
    articleId = a.createArticle("A", kField, at("u1", 0)).id;
    first = a.addSection(articleId, 0, "x", NaturalText{"Introduction", ""}, at("u1", 1)).id;
    second = a.addSection(articleId, 0, "y", NaturalText{"Methods", ""}, at("u1", 2)).id;
  }
  graph::Store reopened(dir / "store.log");
  auto article = Articles(reopened).article(articleId);
  ASSERT_EQ(article.sections.size(), 2u);
  EXPECT_EQ(article.sections[0].id, second);
  EXPECT_EQ(article.sections[1].id, first);
}

TEST_F(Fixture, UpdateSectionKeepsOneDeoClass) {
  auto a = articles.createArticle("A", kField, at("u1", 0));
  auto s = articles.addSection(a.id, 0, "x", NaturalText{"Introduction", "old"}, at("u1", 1));
  articles.updateSection(s.id, std::nullopt, NaturalText{"Motivation", "new"}, at("u2", 2));
  auto read = articles.article(a.id).sections.at(0);
  EXPECT_EQ(read.heading, "x");
  EXPECT_EQ(std::get<NaturalText>(read.body), (NaturalText{"Motivation", "new"}));
  auto types = store.getStatements({s.id, P(vocab::kType), std::nullopt});
  ASSERT_EQ(types.size(), 1u);
  EXPECT_EQ(types[0].object().key, "Motivation");
  expectError(ErrorCode::UnknownSection,
              [&] { articles.updateSection(R("R1"), "h", std::nullopt, at("u2", 3)); });
}

TEST_F(Fixture, CitationsLinkResolvedPapers) {
  auto paper = articles.createPaper({"Cited", {}, "", "R7001"}, at("u1", 0));
  auto a = articles.createArticle("A", kField, at("u1", 1));
  auto s = articles.addSection(
      a.id, 0, "x", NaturalText{"Introduction", "See [@R7001; @missing] and @R7001."}, at("u1", 2));
  auto cites = store.getStatements({s.id, P(vocab::kCites), std::nullopt});
  ASSERT_EQ(cites.size(), 1u);
  EXPECT_EQ(cites[0].object(), paper.id);
}

TEST_F(Fixture, ComparisonCellsFeedQuery4) {
  auto paper = articles.createPaper({"P", {}, "2019"}, at("u1", 0));
  auto contribution = paper.contributions.at(0);
  auto c = articles.createComparison(
      "C", {{paper.id, contribution}}, {P(vocab::kResearchProblem), P(vocab::kRdfSupport)},
      {{contribution, P(vocab::kResearchProblem), {R(vocab::kScholarlyCommunication)}},
       {contribution, P(vocab::kRdfSupport), {LiteralValue{"T", "xsd:string"}}}},
      at("u1", 1));
  auto rows = query(
      "SELECT DISTINCT ?paper WHERE { ?contrib a orkgc:Contribution; orkgp:P32 orkgr:R49584; "
      "orkgp:P7009 \"T\"^^xsd:string. ?paper orkgp:P31 ?contrib. }");
  EXPECT_EQ(rows, std::vector<std::string>{paper.id.key});
  auto read = articles.comparison(c.id);
  EXPECT_EQ(read.columns, c.columns);
  EXPECT_EQ(read.rows, c.rows);
  EXPECT_EQ(read.cells, c.cells);
  EXPECT_EQ(read.cells.size(), 2u);
}

TEST_F(Fixture, ComparisonValidation) {
  auto [paper, c] = paperAndComparison({});
  EXPECT_TRUE(c.rows.empty());
  EXPECT_TRUE(articles.comparison(c.id).cells.empty());
  auto contribution = paper.contributions.at(0);
  expectError(ErrorCode::DanglingReference, [&] {
    articles.createComparison("x", {{paper.id, contribution}}, {P(vocab::kResearchProblem)},
                              {{contribution, P(vocab::kRdfSupport), {}}}, at("u1", 3));
  });
  expectError(ErrorCode::DuplicateProperty, [&] {
    articles.createComparison("x", {{paper.id, contribution}},
                              {P(vocab::kRdfSupport), P(vocab::kRdfSupport)}, {}, at("u1", 3));
  });
  auto other = articles.createPaper({"Other", {}, ""}, at("u1", 3));
  expectError(ErrorCode::DanglingReference, [&] {
    articles.createComparison("x", {{paper.id, other.contributions.at(0)}}, {}, {}, at("u1", 3));
  });
}

TEST_F(Fixture, SetCellReplacesAndClears) {
  auto [paper, c] = paperAndComparison({P(vocab::kRdfSupport)});
  auto contribution = paper.contributions.at(0);
  auto prop = P(vocab::kRdfSupport);
  articles.setCell(c.id, contribution, prop, {LiteralValue{"T", "xsd:string"}}, at("u2", 3));
  auto cell = articles.comparison(c.id).cells.at({contribution, prop});
  ASSERT_EQ(cell.size(), 1u);
  EXPECT_EQ(store.entity(cell[0])->literal->value, "T");
  articles.setCell(c.id, contribution, prop,
                   {LiteralValue{"F", "xsd:string"}, LiteralValue{"maybe", "xsd:string"}},
                   at("u3", 4));
  cell = articles.comparison(c.id).cells.at({contribution, prop});
  ASSERT_EQ(cell.size(), 2u);
  EXPECT_EQ(store.entity(cell[0])->literal->value, "F");
  EXPECT_EQ(store.entity(cell[1])->literal->value, "maybe");
  articles.setCell(c.id, contribution, prop, {}, at("u3", 5));
  EXPECT_FALSE(articles.comparison(c.id).cells.count({contribution, prop}));
  expectError(ErrorCode::UndeclaredRowOrColumn, [&] {
    articles.setCell(c.id, contribution, P(vocab::kResearchProblem), {}, at("u3", 6));
  });
  expectError(ErrorCode::UnknownComparison,
              [&] { articles.setCell(paper.id, contribution, prop, {}, at("u3", 6)); });
}

TEST_F(Fixture, CellTotalityUnderRandomEdits) {
  // Oracle: a plain map of the last values written per cell.
  auto p1 = articles.createPaper({"P1", {}, "", std::nullopt, {"C1a", "C1b"}}, at("u1", 0));
  auto p2 = articles.createPaper({"P2", {}, ""}, at("u1", 0));
  std::vector<ComparisonColumn> columns = {
      {p1.id, p1.contributions[0]}, {p1.id, p1.contributions[1]}, {p2.id, p2.contributions[0]}};
  std::vector<EntityId> props = {P(vocab::kRdfSupport), P(vocab::kResearchProblem), P(vocab::kP27)};
  auto c = articles.createComparison("C", columns, props, {}, at("u1", 1));
  std::map<CellKey, std::vector<std::string>> oracle;
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> pick(0, 2), count(0, 3), word(0, 4);
  for (int i = 0; i < 200; ++i) {
    auto contribution = columns[static_cast<std::size_t>(pick(rng))].contribution;
    auto prop = props[static_cast<std::size_t>(pick(rng))];
    std::vector<CellValue> values;
    std::vector<std::string> text;
    for (int k = count(rng); k > 0; --k) {
      text.push_back("v" + std::to_string(word(rng)));
      values.push_back(LiteralValue{text.back(), "xsd:string"});
    }
    articles.setCell(c.id, contribution, prop, values, at("u2", 10 + i));
    if (text.empty())
      oracle.erase({contribution, prop});
    else
      oracle[{contribution, prop}] = text;
  }
  auto read = articles.comparison(c.id);
  std::map<CellKey, std::vector<std::string>> actual;
  for (const auto& [key, values] : read.cells) {
    for (const auto& v : values) actual[key].push_back(store.entity(v)->literal->value);
  }
  EXPECT_EQ(actual, oracle);
}

TEST_F(Fixture, VisualizationSeriesMustBeARow) {
  auto [paper, c] = paperAndComparison({P(vocab::kRdfSupport)});
  auto v = articles.createVisualization(c.id, ChartKind::BarChart, P(vocab::kRdfSupport),
                                        "RDF support per paper", at("u1", 3));
  auto a = articles.createArticle("A", kField, at("u1", 4));
  articles.addSection(a.id, 0, "Chart", VisualizationRef{v.id}, at("u1", 5));
  auto view = articles.articleView(a.id);
  auto read = readVisualization(view, v.id);
  EXPECT_EQ(read.chartKind, ChartKind::BarChart);
  EXPECT_EQ(read.label, "RDF support per paper");
  EXPECT_EQ(read.comparison, c.id);
  expectError(ErrorCode::UndeclaredRowOrColumn, [&] {
    articles.createVisualization(c.id, ChartKind::LineChart, P(vocab::kP27), "x", at("u1", 6));
  });
}

TEST_F(Fixture, OntologyTable) {
  auto paper = articles.createPaper({"P", {}, ""}, at("u1", 0));
  auto contribution = paper.contributions.at(0);
  store.write([&](graph::GraphState& g) {
    ops::describeEntity(g, P(vocab::kRdfSupport), "Whether RDF is supported",
                        std::string("http://example.org/rdf"), at("u1", 1));
  });
  auto only = articles.createComparison("C1", {{paper.id, contribution}}, {P(vocab::kRdfSupport)},
                                        {}, at("u1", 2));
  auto rows = articles.ontologyTable({only.id});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].entity, P(vocab::kRdfSupport));
  EXPECT_EQ(rows[0].description, "Whether RDF is supported");
  EXPECT_EQ(rows[0].externalUri, "http://example.org/rdf");

  auto a = articles.createComparison(
      "C2", {{paper.id, contribution}}, {P(vocab::kResearchProblem)},
      {{contribution, P(vocab::kResearchProblem), {R(vocab::kScholarlyCommunication)}}},
      at("u1", 3));
  auto b = articles.createComparison("C3", {{paper.id, contribution}},
                                     {P(vocab::kResearchProblem), P(vocab::kRdfSupport)}, {},
                                     at("u1", 4));
  rows = articles.ontologyTable({a.id, b.id});
  std::vector<std::string> keys;
  for (const auto& r : rows) keys.push_back(r.entity.key);
  // Sorted by label: "RDF support", "Scholarly Communication", "research field".
  EXPECT_EQ(keys, (std::vector<std::string>{"P7009", "R49584", "P32"}));
  EXPECT_EQ(rows[2].description, "");
  EXPECT_FALSE(rows[2].externalUri);
  expectError(ErrorCode::UnknownComparison, [&] { articles.ontologyTable({paper.id}); });
}

TEST_F(Fixture, UsedEntitiesExcludeStructure) {
  auto a = articles.createArticle("A", kField, at("u1", 0));
  auto empty = articles.usedEntities(a.id);
  // The research field link is content, not structure.
  EXPECT_EQ(empty.properties, std::vector<EntityId>{P(vocab::kResearchField)});
  auto [paper, c] = paperAndComparison({P(vocab::kResearchProblem)}, {});
  articles.setCell(c.id, paper.contributions[0], P(vocab::kResearchProblem),
                   {R(vocab::kScholarlyCommunication)}, at("u1", 3));
  articles.addSection(a.id, 0, "Cmp", ComparisonRef{c.id}, at("u1", 4));
  auto used = articles.usedEntities(a.id);
  auto has = [](const std::vector<EntityId>& list, const EntityId& id) {
    return std::find(list.begin(), list.end(), id) != list.end();
  };
  EXPECT_TRUE(has(used.properties, P(vocab::kResearchProblem)));
  EXPECT_FALSE(has(used.properties, P(vocab::kHasSection)));
  EXPECT_FALSE(has(used.properties, P(vocab::kHasContribution)));
  EXPECT_FALSE(has(used.properties, P(vocab::kType)));
  EXPECT_TRUE(has(used.resources, R(vocab::kScholarlyCommunication)));
  EXPECT_TRUE(has(used.resources, kField));
}

TEST_F(Fixture, ThreeHopPatternMatchesExactlyLiveSections) {
  auto a = articles.createArticle("A", kField, at("u1", 0));
  std::vector<EntityId> live;
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    std::uniform_int_distribution<int> op(0, 2);
    if (live.empty() || op(rng) != 0) {
      std::uniform_int_distribution<std::size_t> pos(0, live.size());
      auto at_ = pos(rng);
      auto s = articles.addSection(a.id, at_, "s", NaturalText{"Results", "x"}, at("u1", i));
      live.insert(live.begin() + static_cast<long>(at_), s.id);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
      auto victim = pick(rng);
      articles.deleteSection(live[victim], at("u1", i));
      live.erase(live.begin() + static_cast<long>(victim));
    }
    auto rows = query("SELECT ?s WHERE { <http://orkg.org/orkg/resource/" + a.id.key +
                      "> orkgp:P31 ?c . ?c orkgp:HasSection ?s }");
    std::vector<std::string> expected;
    for (const auto& id : live) expected.push_back(id.key);
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(rows, expected);
    std::vector<EntityId> ordered;
    for (const auto& s : articles.article(a.id).sections) ordered.push_back(s.id);
    ASSERT_EQ(ordered, live);
  }
}
