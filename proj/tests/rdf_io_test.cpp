#include "smartreview/rdf/rdf_io.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "smartreview/graph/store.hpp"
#include "smartreview/graph/vocabulary.hpp"
#include "test_support.hpp"

using namespace smartreview;
using namespace smartreview::graph;
using smartreview::testing::at;
using smartreview::testing::expectError;

namespace {

EntityId pred(std::string_view key) { return EntityId::predicate(std::string(key)); }
EntityId cls(std::string_view key) { return EntityId::klass(std::string(key)); }

std::string nt(const GraphView& view, rdf::ExportOptions options = {}) {
  return rdf::exportRdf(view, rdf::RdfFormat::NTriples, {}, options);
}

// An article with one Introduction section, written straight into the store.
struct SmallArticle {
  Store store;
  EntityId article, contribution, section;

  SmallArticle() {
    auto p = at("fixture", 0);
    article = store.createEntity({EntityKind::Resource, "Review", {cls(vocab::kSmartReview)}}, p);
    contribution =
        store.createEntity({EntityKind::Resource, "Contribution", {cls(vocab::kContribution)}}, p);
    section = store.createEntity({EntityKind::Resource, "Intro", {cls(vocab::kIntroduction)}}, p);
    auto text = store.createEntity(
        {EntityKind::Literal, "", {}, LiteralValue{"Hello \"world\"\nline\\two", "xsd:string"}}, p);
    store.addStatement(article, pred(vocab::kResearchField),
                       EntityId::resource(std::string(vocab::kInformationScience)), p);
    store.addStatement(article, pred(vocab::kHasContribution), contribution, p);
    store.addStatement(contribution, pred(vocab::kHasSection), section, p);
    store.addStatement(section, pred(vocab::kHasMarkdown), text, p);
  }
};

std::set<std::string> lines(const std::string& doc) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start < doc.size()) {
    auto end = doc.find('\n', start);
    out.insert(doc.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST(RdfExport, EmptyGraphGivesEmptyDocument) {
  Store store;
  EXPECT_EQ(nt(store.headView()), "");
  EXPECT_EQ(rdf::exportRdf(store.headView(), rdf::RdfFormat::Turtle), "");
}

TEST(RdfExport, PublishingOntologyTypes) {
  SmallArticle a;
  auto doc = nt(a.store.headView());
  rdf::UriMapping m;
  auto typeLine = [&](const EntityId& id, std::string_view klass) {
    return "<" + m.toUri(id) + "> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <" +
           std::string(klass) + "> .";
  };
  auto all = lines(doc);
  EXPECT_TRUE(all.count(typeLine(a.section, "http://purl.org/spar/deo/Introduction"))) << doc;
  EXPECT_TRUE(all.count(typeLine(a.section, "http://purl.org/spar/doco/Section")));
  EXPECT_TRUE(all.count(typeLine(a.article, "http://purl.org/spar/fabio/ReviewArticle")));
  // The internal class stays as well; the external one is an addition.
  EXPECT_TRUE(all.count(typeLine(a.section, "http://orkg.org/orkg/class/Introduction")));
  EXPECT_TRUE(
      all.count("<http://orkg.org/orkg/predicate/P30> "
                "<http://www.w3.org/2000/01/rdf-schema#label> "
                "\"research field\"^^<http://www.w3.org/2001/XMLSchema#string> ."));
}

TEST(RdfExport, SortedUniqueAndDeterministic) {
  SmallArticle a;
  // The same triple twice under different statement ids.
  a.store.addStatement(a.article, pred(vocab::kResearchField),
                       EntityId::resource(std::string(vocab::kInformationScience)),
                       at("fixture", 9));
  auto doc = nt(a.store.headView());
  EXPECT_EQ(doc, nt(a.store.headView()));
  std::vector<std::string> ordered;
  std::size_t start = 0;
  while (start < doc.size()) {
    auto end = doc.find('\n', start);
    ordered.push_back(doc.substr(start, end - start));
    start = end + 1;
  }
  EXPECT_TRUE(std::is_sorted(ordered.begin(), ordered.end()));
  EXPECT_EQ(std::set<std::string>(ordered.begin(), ordered.end()).size(), ordered.size());
}

TEST(RdfExport, LiteralEscaping) {
  SmallArticle a;
  auto doc = nt(a.store.headView());
  EXPECT_NE(
      doc.find("\"Hello \\\"world\\\"\\nline\\\\two\"^^<http://www.w3.org/2001/XMLSchema#string>"),
      std::string::npos)
      << doc;
}

TEST(RdfExport, ProvenanceIsOptIn) {
  SmallArticle a;
  auto plain = nt(a.store.headView());
  EXPECT_EQ(plain.find("dc/terms/creator"), std::string::npos);
  EXPECT_EQ(plain.find("_:"), std::string::npos);
  auto annotated = nt(a.store.headView(), {.provenance = true});
  EXPECT_NE(annotated.find("<http://orkg.org/orkg/statement/S1> "
                           "<http://purl.org/dc/terms/creator> "
                           "\"fixture\"^^<http://www.w3.org/2001/XMLSchema#string> ."),
            std::string::npos)
      << annotated;
  EXPECT_NE(annotated.find("#Statement>"), std::string::npos);
}

TEST(RdfExport, TurtleIsPrefixedAndParsesBackToTheSameTriples) {
  SmallArticle a;
  auto ttl = rdf::exportRdf(a.store.headView(), rdf::RdfFormat::Turtle);
  EXPECT_NE(ttl.find("@prefix orkgr: <http://orkg.org/orkg/resource/> ."), std::string::npos);
  EXPECT_NE(ttl.find(" a "), std::string::npos);
  EXPECT_NE(ttl.find("deo:Introduction"), std::string::npos);
  EXPECT_NE(ttl.find("orkgp:P30 orkgr:R278"), std::string::npos) << ttl;
  EXPECT_NE(ttl.find("^^xsd:string"), std::string::npos);
}

TEST(RdfImport, RoundTripIsAFixedPoint) {
  SmallArticle a;
  auto first = nt(a.store.headView());
  Store fresh;
  auto count = rdf::importNTriples(fresh, first);
  EXPECT_EQ(count, a.store.headView().statements().size());
  auto second = nt(fresh.headView());
  EXPECT_EQ(second, first);
  for (const auto& s : fresh.getStatements()) EXPECT_EQ(s.provenance.userId, "import");
  // Importing again adds nothing.
  EXPECT_EQ(rdf::importNTriples(fresh, first), 0u);
  EXPECT_EQ(nt(fresh.headView()), first);
}

TEST(RdfImport, RandomGraphsRoundTrip) {
  std::mt19937 rng(5);
  const std::string odd[] = {"plain",     "with space", "quote\"s", "back\\slash", "tab\there",
                             "new\nline", "ünïcödé",    "",         "<angle>",     "{brace}"};
  for (int round = 0; round < 60; ++round) {
    Store store;
    auto p = at("fixture", round);
    std::vector<EntityId> resources, predicates;
    std::uniform_int_distribution<int> pick(0, 9);
    for (int i = 0; i < 6; ++i) {
      std::string key = i % 2 ? "R" + std::to_string(round * 10 + i)
                              : "k%" + odd[pick(rng)].substr(0, 3) + std::to_string(i);
      for (auto& c : key)
        if (c == ' ' || c == '\t' || c == '\n') c = '_';
      resources.push_back(
          store.createEntity({EntityKind::Resource, odd[pick(rng)] + "x", {}, {}, key}, p));
    }
    for (int i = 0; i < 3; ++i) {
      predicates.push_back(
          store.createEntity({EntityKind::Predicate, "pred " + odd[pick(rng)]}, p));
    }
    std::uniform_int_distribution<std::size_t> r(0, resources.size() - 1);
    std::uniform_int_distribution<std::size_t> q(0, predicates.size() - 1);
    for (int i = 0; i < 20; ++i) {
      EntityId object = resources[r(rng)];
      if (pick(rng) < 4) {
        object = store.createEntity(
            {EntityKind::Literal,
             "",
             {},
             LiteralValue{odd[pick(rng)], pick(rng) < 5 ? "xsd:string" : "xsd:integer"}},
            p);
      }
      store.addStatement(resources[r(rng)], predicates[q(rng)], object, p);
    }
    auto first = nt(store.headView());
    Store fresh;
    rdf::importNTriples(fresh, first);
    ASSERT_EQ(nt(fresh.headView()), first);
    // Same triple set independent of the byte comparison.
    auto parsedA = rdf::parseNTriples(first);
    auto parsedB = rdf::parseNTriples(nt(fresh.headView()));
    ASSERT_EQ(parsedA.size(), parsedB.size());
  }
}

TEST(RdfImport, MalformedLineIsAllOrNothing) {
  SmallArticle a;
  auto doc = nt(a.store.headView());
  auto first = doc.find('\n');
  auto second = doc.find('\n', first + 1);
  std::string broken = doc.substr(0, second + 1) + "<http://orkg.org/orkg/resource/X> oops .\n" +
                       doc.substr(second + 1);
  Store fresh;
  auto before = fresh.logSize();
  try {
    rdf::importNTriples(fresh, broken);
    FAIL();
  } catch (const LocatedError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_EQ(e.location(), 3u);
  }
  EXPECT_EQ(fresh.logSize(), before);
  EXPECT_TRUE(fresh.getStatements().empty());
}

TEST(RdfImport, EmptyAndCommentOnlyDocuments) {
  Store store;
  EXPECT_EQ(rdf::importNTriples(store, ""), 0u);
  EXPECT_EQ(rdf::importNTriples(store, "# nothing\n\n   \n"), 0u);
}

TEST(RdfImport, RejectsUnknownBasesBlankNodesAndLanguageTags) {
  Store store;
  try {
    rdf::importNTriples(store,
                        "<http://orkg.org/orkg/resource/A> <http://orkg.org/orkg/predicate/P30> "
                        "<http://orkg.org/orkg/resource/B> .\n"
                        "<http://example.org/a> <http://orkg.org/orkg/predicate/P30> "
                        "<http://orkg.org/orkg/resource/B> .\n");
    FAIL();
  } catch (const LocatedError& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownUriBase);
    EXPECT_EQ(e.location(), 2u);
  }
  EXPECT_TRUE(store.getStatements().empty());
  expectError(ErrorCode::ParseError, [&] {
    rdf::importNTriples(
        store, "_:b <http://orkg.org/orkg/predicate/P30> <http://orkg.org/orkg/resource/B> .");
  });
  expectError(ErrorCode::ParseError, [&] {
    rdf::importNTriples(
        store, "<http://orkg.org/orkg/resource/A> <http://orkg.org/orkg/predicate/P30> \"x\"@en .");
  });
}

TEST(RdfImport, ParsesEscapesAndTypes) {
  auto triples = rdf::parseNTriples(
      "<http://a/x> <http://a/p> \"caf\\u00E9 \\U0001F600 \\t\" .  # trailing comment\r\n"
      "<http://a/x> <http://a/p> \"5\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n");
  ASSERT_EQ(triples.size(), 2u);
  const auto& first = std::get<rdf::LiteralTerm>(triples[0].object);
  EXPECT_EQ(first.value, "caf\xC3\xA9 \xF0\x9F\x98\x80 \t");
  EXPECT_EQ(first.datatype, "http://www.w3.org/2001/XMLSchema#string");
  EXPECT_EQ(std::get<rdf::LiteralTerm>(triples[1].object).datatype,
            "http://www.w3.org/2001/XMLSchema#integer");
}
