#include "smartreview/service/service.hpp"

#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "html_check.hpp"
#include "httplib.h"
#include "json.hpp"
#include "smartreview/article/fixture.hpp"
#include "test_support.hpp"

using namespace smartreview;
using json = nlohmann::json;

namespace {

class Running {
 public:
  explicit Running(service::Platform& platform, service::ServiceOptions options = {})
      : service_(platform, options) {
    port_ = service_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { service_.run(); });
    service_.waitUntilReady();
  }
  ~Running() {
    service_.stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10);
    return c;
  }

 private:
  service::Service service_;
  int port_ = -1;
  std::thread thread_;
};

httplib::Headers bearer(const std::string& token) { return {{"Authorization", "Bearer " + token}}; }

json body(const httplib::Result& r) {
  EXPECT_TRUE(r) << "request failed";
  return json::parse(r->body);
}

std::string registerUser(httplib::Client& c, const std::string& name) {
  auto r = c.Post("/accounts", json{{"displayName", name}}.dump(), "application/json");
  EXPECT_EQ(r->status, 201);
  return body(r)["token"];
}

}  // namespace

TEST(Service, RegistersAccountsAndRejectsBadNames) {
  service::Platform platform;
  Running server(platform);
  auto c = server.client();
  auto r = c.Post("/accounts", R"({"displayName":"Ada Lovelace"})", "application/json");
  ASSERT_EQ(r->status, 201);
  auto j = body(r);
  EXPECT_EQ(j["displayName"], "Ada Lovelace");
  EXPECT_EQ(j["token"].get<std::string>().size(), 64u);
  EXPECT_EQ(platform.accounts().authenticate(j["token"].get<std::string>()), j["userId"]);

  EXPECT_EQ(c.Post("/accounts", R"({"displayName":"   "})", "application/json")->status, 400);
  EXPECT_EQ(c.Post("/accounts", "{not json", "application/json")->status, 400);
  EXPECT_EQ(c.Post("/accounts", "{}", "application/json")->status, 400);
}

TEST(Service, AuthorsAnArticleEndToEnd) {
  service::Platform platform;
  Running server(platform);
  auto c = server.client();
  auto token = registerUser(c, "Grace");

  auto r =
      c.Post("/articles", bearer(token), R"({"title":"Open Data Review"})", "application/json");
  ASSERT_EQ(r->status, 201) << r->body;
  std::string id = body(r)["id"];

  json intro = {{"type", "text"},
                {"deoType", "Introduction"},
                {"heading", "Introduction"},
                {"markdown", "Open data matters.\n\n## Scope\n\nSee below."}};
  r = c.Post("/articles/" + id + "/sections", bearer(token), intro.dump(), "application/json");
  ASSERT_EQ(r->status, 201) << r->body;
  std::string introId = body(r)["id"];
  json outro = {{"type", "text"},
                {"deoType", "Conclusion"},
                {"heading", "Conclusion"},
                {"markdown", "Done."},
                {"position", 0}};
  r = c.Post("/articles/" + id + "/sections", bearer(token), outro.dump(), "application/json");
  ASSERT_EQ(r->status, 201) << r->body;
  std::string outroId = body(r)["id"];

  // Move the conclusion to the end and rename it.
  r = c.Patch("/sections/" + outroId, bearer(token), R"({"position":1,"heading":"Summary"})",
              "application/json");
  ASSERT_EQ(r->status, 200) << r->body;
  auto article = body(r);
  ASSERT_EQ(article["sections"].size(), 2u);
  EXPECT_EQ(article["sections"][0]["id"], introId);
  EXPECT_EQ(article["sections"][1]["heading"], "Summary");
  EXPECT_EQ(article["contributors"], json::array({platform.accounts().authenticate(token)}));

  r = c.Get("/articles/" + id + "/html");
  ASSERT_EQ(r->status, 200);
  EXPECT_FALSE(smartreview::testing::checkWellFormed(r->body).has_value());
  EXPECT_NE(r->body.find("Grace"), std::string::npos);

  r = c.Post("/articles/" + id + "/publish", bearer(token), R"({"description":"first"})",
             "application/json");
  ASSERT_EQ(r->status, 201) << r->body;
  EXPECT_EQ(body(r)["versionId"], 1);

  r = c.Patch("/sections/" + introId, bearer(token),
              json{{"type", "text"},
                   {"deoType", "Introduction"},
                   {"markdown", "Open data matters a lot.\n\n## Scope\n\nSee below."}}
                  .dump(),
              "application/json");
  ASSERT_EQ(r->status, 200) << r->body;

  r = c.Get("/articles/" + id + "/diff?from=1&to=HEAD");
  ASSERT_EQ(r->status, 200);
  auto diff = body(r);
  ASSERT_EQ(diff["textDiffs"].size(), 1u);
  EXPECT_EQ(diff["textDiffs"][0]["hunks"][0]["lines"][0], "-Open data matters.");
  EXPECT_EQ(diff["textDiffs"][0]["hunks"][0]["lines"][1], "+Open data matters a lot.");

  r = c.Get("/articles/" + id + "/diff?from=1&to=HEAD", {{"Accept", "text/plain"}});
  EXPECT_NE(r->body.find("@@ -1,3 +1,3 @@"), std::string::npos) << r->body;

  r = c.Get("/articles/" + id + "/versions");
  ASSERT_EQ(body(r).size(), 1u);
  r = c.Get("/articles/" + id + "/versions/1/html");
  ASSERT_EQ(r->status, 200);
  EXPECT_NE(r->body.find("Open data matters."), std::string::npos);
  EXPECT_EQ(r->body.find("a lot"), std::string::npos);
  r = c.Get("/articles/" + id + "/versions/1/rdf", {{"Accept", "text/turtle"}});
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(r->get_header_value("Content-Type"), "text/turtle");

  r = c.Delete("/sections/" + outroId, bearer(token));
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(body(r)["sections"].size(), 1u);
  EXPECT_EQ(c.Get("/articles")->status, 200);
}

TEST(Service, ComparisonsAndVisualizations) {
  service::Platform platform;
  Running server(platform);
  auto c = server.client();
  auto token = registerUser(c, "Lin");

  auto paper = [&](const std::string& title) {
    auto r = c.Post("/papers", bearer(token),
                    json{{"title", title}, {"authors", {"A. Author"}}, {"date", "2020"}}.dump(),
                    "application/json");
    EXPECT_EQ(r->status, 201) << r->body;
    return body(r);
  };
  auto p1 = paper("First platform");
  auto p2 = paper("Second platform");
  auto r = c.Post("/entities", bearer(token), R"({"kind":"predicate","label":"entity count"})",
                  "application/json");
  ASSERT_EQ(r->status, 201) << r->body;
  std::string prop = body(r)["id"];

  json comparison = {
      {"label", "Platforms"},
      {"columns", {{{"paper", p1["id"]}}, {{"paper", p2["id"]}}}},
      {"properties", {prop}},
      {"cells",
       {{{"contribution", p1["contributions"][0]},
         {"property", prop},
         {"values",
          {{{"literal", "12"}, {"datatype", "http://www.w3.org/2001/XMLSchema#integer"}}}}}}}};
  r = c.Post("/comparisons", bearer(token), comparison.dump(), "application/json");
  ASSERT_EQ(r->status, 201) << r->body;
  std::string cid = body(r)["id"];

  r = c.Patch("/comparisons/" + cid + "/cells", bearer(token),
              json{{"contribution", p2["contributions"][0]},
                   {"property", prop},
                   {"values",
                    {{{"literal", "7"}, {"datatype", "http://www.w3.org/2001/XMLSchema#integer"}}}}}
                  .dump(),
              "application/json");
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(body(r)["cells"].size(), 2u);

  r = c.Get("/comparisons/" + cid + "/csv");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(r->body, "Property,First platform,Second platform\r\nentity count,12,7\r\n");

  r = c.Post("/visualizations", bearer(token),
             json{{"comparison", cid}, {"chart", "BarChart"}, {"series", prop}, {"label", "Counts"}}
                 .dump(),
             "application/json");
  ASSERT_EQ(r->status, 201) << r->body;
  EXPECT_EQ(body(r)["chart"], "BarChart");

  r = c.Get("/entities?kind=predicate&q=entity");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)[0]["label"], "entity count");
}

TEST(Service, QueriesAndExports) {
  service::Platform platform;
  article::seedFixture(platform.store());
  Running server(platform);
  auto c = server.client();

  auto r = c.Post("/sparql",
                  "PREFIX orkgc: <http://orkg.org/orkg/class/>\n"
                  "SELECT ?a WHERE { ?a a orkgc:SmartReview }",
                  "application/sparql-query");
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_NE(r->body.find("R135360"), std::string::npos);
  r = c.Post("/sparql", "SELECT ?a WHERE { ?a ?b ?c } GROUP BY ?a", "application/sparql-query");
  EXPECT_EQ(r->status, 422) << r->body;
  r = c.Post("/sparql", "SELEC nothing", "application/sparql-query");
  EXPECT_EQ(r->status, 400);

  r = c.Get("/articles/R135360/rdf");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(r->get_header_value("Content-Type"), "application/n-triples");
  r = c.Get("/rdf/dump?format=turtle");
  EXPECT_EQ(r->get_header_value("Content-Type"), "text/turtle");

  r = c.Get("/articles/R135360");
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["sections"].size(), 8u);
  EXPECT_EQ(c.Get("/comparisons/R46001")->status, 200);
}

TEST(Service, MapsErrorsToStatusCodes) {
  service::Platform platform;
  Running server(platform);
  auto c = server.client();
  auto token = registerUser(c, "Eve");
  EXPECT_EQ(c.Get("/articles/R999")->status, 404);
  EXPECT_EQ(c.Get("/articles/R999/versions/1/html")->status, 404);
  EXPECT_EQ(c.Get("/comparisons/R999")->status, 404);
  EXPECT_EQ(c.Patch("/sections/R999", bearer(token), "{}", "application/json")->status, 404);
  EXPECT_EQ(c.Post("/articles", bearer(token), "[1]", "application/json")->status, 400);
  EXPECT_EQ(c.Post("/articles", bearer(token), R"({"title":"x","researchField":"R404"})",
                   "application/json")
                ->status,
            404);
  auto r =
      c.Post("/entities", bearer(token), R"({"kind":"literal","label":"x"})", "application/json");
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(body(r)["error"], "InvalidKind");
}

TEST(Service, RejectsUnauthenticatedWritesWithoutTouchingTheStore) {
  service::Platform platform;
  article::seedFixture(platform.store());
  Running server(platform);
  auto c = server.client();
  auto valid = registerUser(c, "Mallory's victim");
  const auto before = platform.store().logSize();

  struct Endpoint {
    const char* method;
    std::string path;
    std::string body;
  };
  const std::vector<Endpoint> endpoints = {
      {"POST", "/articles", R"({"title":"t"})"},
      {"POST", "/articles/R135360/sections", R"({"type":"text","deoType":"Introduction"})"},
      {"PATCH", "/sections/R48001", R"({"heading":"x"})"},
      {"DELETE", "/sections/R48001", ""},
      {"POST", "/papers", R"({"title":"p"})"},
      {"POST", "/entities", R"({"kind":"resource","label":"x"})"},
      {"POST", "/comparisons", R"({"label":"c"})"},
      {"PATCH", "/comparisons/R46001/cells",
       R"({"contribution":"R44101","property":"P32","values":[]})"},
      {"POST", "/visualizations", R"({"comparison":"R46001","chart":"Table","series":"P45002"})"},
      {"POST", "/articles/R135360/publish", R"({"description":"d"})"},
      {"PUT", "/articles/R135360", "{}"},
      {"POST", "/nowhere", "{}"},
  };
  std::mt19937 rng(7);
  auto randomToken = [&] {
    static const std::string alphabet = "0123456789abcdefABCDEF-_. ";
    std::string t(std::uniform_int_distribution<int>(0, 80)(rng), ' ');
    for (auto& ch : t) ch = alphabet[rng() % alphabet.size()];
    return t;
  };
  int checked = 0;
  for (int round = 0; round < 20; ++round) {
    for (const auto& e : endpoints) {
      httplib::Headers headers;
      switch (round % 5) {
        case 0:
          break;  // no header
        case 1:
          headers = bearer(randomToken());
          break;
        case 2:
          headers = {{"Authorization", "Basic " + valid}};
          break;
        case 3:
          headers = bearer(valid.substr(0, 63) + (valid[63] == '0' ? "1" : "0"));
          break;
        case 4:
          headers = {{"Authorization", "Bearer"}};
          break;
      }
      httplib::Request req;
      req.method = e.method;
      req.path = e.path;
      req.headers = headers;
      req.body = e.body;
      req.set_header("Content-Type", "application/json");
      auto r = c.send(req);
      ASSERT_TRUE(r);
      EXPECT_EQ(r->status, 401) << e.method << " " << e.path;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 240);
  EXPECT_EQ(platform.store().logSize(), before);
  EXPECT_TRUE(platform.versions().list(graph::EntityId::resource("R135360")).empty());

  // The same token is accepted once it is spelled correctly.
  auto r =
      c.Post("/entities", bearer(valid), R"({"kind":"resource","label":"x"})", "application/json");
  EXPECT_EQ(r->status, 201);
  EXPECT_GT(platform.store().logSize(), before);
}

TEST(Service, RateLimitsWritesPerUser) {
  service::Platform platform;
  Running server(platform, {.maxWritesPerMinute = 3});
  auto c = server.client();
  auto a = registerUser(c, "A");
  auto b = registerUser(c, "B");
  std::vector<int> statuses;
  for (int i = 0; i < 5; ++i) {
    statuses.push_back(
        c.Post("/entities", bearer(a), R"({"kind":"resource","label":"x"})", "application/json")
            ->status);
  }
  EXPECT_EQ(statuses, (std::vector<int>{201, 201, 201, 429, 429}));
  EXPECT_EQ(c.Post("/entities", bearer(b), R"({"kind":"resource","label":"y"})", "application/json")
                ->status,
            201);
}

TEST(Service, AccountsSurviveRestart) {
  auto dir = smartreview::testing::freshTempDir("accounts");
  std::string token, userId;
  {
    service::Platform platform(dir);
    auto reg = platform.accounts().registerAccount("Persistent Pat");
    token = reg.token;
    userId = reg.account.userId;
  }
  service::Platform platform(dir);
  EXPECT_EQ(platform.accounts().authenticate(token), userId);
  EXPECT_EQ(platform.accounts().displayName(userId), "Persistent Pat");
  EXPECT_TRUE(platform.store().read([&](const auto& g) { return g.isUserRegistered(userId); }));
  smartreview::testing::expectError(ErrorCode::UnknownToken,
                                    [&] { platform.accounts().authenticate("nope"); });
  auto next = platform.accounts().registerAccount("Second");
  EXPECT_NE(next.account.userId, userId);
  std::filesystem::remove_all(dir);
}
