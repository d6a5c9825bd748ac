#include "smartreview/article/fixture.hpp"

#include "smartreview/article/document.hpp"
#include "smartreview/graph/vocabulary.hpp"

namespace smartreview::article {

namespace {

constexpr unsigned char kFixtureBytes[] = {
#include "fixture_document.inc"
};

}  // namespace

std::string_view fixtureDocument() {
  return {reinterpret_cast<const char*>(kFixtureBytes), sizeof(kFixtureBytes)};
}

EntityId seedFixture(graph::Store& store) {
  EntityId id = EntityId::resource(std::string(graph::vocab::kShowcaseReview));
  return store.write([&](graph::GraphState& g) {
    if (g.hasEntity(id)) return id;
    graph::Provenance p{std::string(graph::vocab::kFixtureUser), graph::nowMillis()};
    return importDocument(g, fixtureDocument(), p);
  });
}

}  // namespace smartreview::article
