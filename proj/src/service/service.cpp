#include "smartreview/service/service.hpp"

#include <chrono>
#include <map>

#include "httplib.h"
#include "json.hpp"
#include "smartreview/error.hpp"
#include "smartreview/graph/vocabulary.hpp"
#include "smartreview/rdf/rdf_io.hpp"
#include "smartreview/render/render.hpp"
#include "smartreview/sparql/sparql.hpp"

namespace smartreview::service {

using article::SectionBody;
using graph::EntityId;
using graph::EntityKind;
using graph::GraphState;
using graph::GraphView;
using json = nlohmann::json;
namespace vocab = graph::vocab;

namespace {

int httpStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::Unauthorized:
    case ErrorCode::UnknownToken:
      return 401;
    case ErrorCode::UnknownEntity:
    case ErrorCode::UnknownStatement:
    case ErrorCode::UnknownArticle:
    case ErrorCode::UnknownSection:
    case ErrorCode::UnknownComparison:
    case ErrorCode::UnknownVersion:
    case ErrorCode::UnknownTarget:
      return 404;
    case ErrorCode::UnsupportedFeature:
      return 422;
    case ErrorCode::RateLimited:
      return 429;
    case ErrorCode::IoError:
      return 500;
    default:
      return 400;
  }
}

json errorJson(const Error& e) {
  json j = {{"error", std::string(errorCodeName(e.code()))}, {"message", e.what()}};
  if (const auto* located = dynamic_cast<const LocatedError*>(&e)) {
    j["location"] = located->location();
  }
  return j;
}

void sendJson(httplib::Response& res, const json& j, int status = 200) {
  res.status = status;
  res.set_content(j.dump(), "application/json");
}

json parseBody(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    auto j = json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "request body must be an object");
    return j;
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidArgument, "malformed JSON body");
  }
}

std::string requireString(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string()) {
    throw Error(ErrorCode::InvalidArgument, std::string("missing string field '") + field + "'");
  }
  return j[field].get<std::string>();
}

std::optional<std::string> optionalString(const json& j, const char* field) {
  if (!j.contains(field) || j[field].is_null()) return std::nullopt;
  if (!j[field].is_string()) {
    throw Error(ErrorCode::InvalidArgument, std::string("field '") + field + "' must be a string");
  }
  return j[field].get<std::string>();
}

// "R1", "orkgr:R1", "orkgp:P2", "orkgc:C3" or the "R:R1" log form.
EntityId entityRef(const json& j, EntityKind fallback = EntityKind::Resource) {
  if (!j.is_string()) throw Error(ErrorCode::InvalidArgument, "entity reference must be a string");
  std::string s = j.get<std::string>();
  static const std::pair<std::string_view, EntityKind> prefixes[] = {
      {"orkgr:", EntityKind::Resource},
      {"orkgp:", EntityKind::Predicate},
      {"orkgc:", EntityKind::Class}};
  for (const auto& [prefix, kind] : prefixes) {
    if (s.starts_with(prefix)) return {kind, s.substr(prefix.size())};
  }
  if (auto id = graph::parseEntityId(s)) return *id;
  if (!graph::isValidKey(s)) throw Error(ErrorCode::InvalidArgument, "invalid entity key");
  return {fallback, s};
}

std::vector<EntityId> entityList(const json& j, const char* field, EntityKind fallback) {
  std::vector<EntityId> out;
  if (!j.contains(field)) return out;
  if (!j[field].is_array()) {
    throw Error(ErrorCode::InvalidArgument, std::string("field '") + field + "' must be a list");
  }
  for (const auto& e : j[field]) out.push_back(entityRef(e, fallback));
  return out;
}

std::string refText(const EntityId& id) {
  switch (id.kind) {
    case EntityKind::Predicate:
      return "orkgp:" + id.key;
    case EntityKind::Class:
      return "orkgc:" + id.key;
    default:
      return id.key;
  }
}

json refList(const std::vector<EntityId>& ids) {
  json out = json::array();
  for (const auto& id : ids) out.push_back(refText(id));
  return out;
}

SectionBody sectionBody(const json& j) {
  std::string type = requireString(j, "type");
  if (type == "text") {
    return article::NaturalText{requireString(j, "deoType"),
                                optionalString(j, "markdown").value_or("")};
  }
  if (type == "comparison") return article::ComparisonRef{entityRef(j.value("target", json()))};
  if (type == "visualization") {
    return article::VisualizationRef{entityRef(j.value("target", json()))};
  }
  if (type == "ontology-table")
    return article::OntologyTable{entityList(j, "entities", EntityKind::Resource)};
  if (type == "resource-table") {
    return article::EntityTable{article::EntityTableKind::Resources,
                                entityList(j, "entities", EntityKind::Resource)};
  }
  if (type == "property-table") {
    return article::EntityTable{article::EntityTableKind::Properties,
                                entityList(j, "entities", EntityKind::Predicate)};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown section type '" + type + "'");
}

json sectionJson(const article::Section& s) {
  json j = {{"id", s.id.key}, {"heading", s.heading}};
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, article::NaturalText>) {
          j["type"] = "text";
          j["deoType"] = b.deoType;
          j["markdown"] = b.markdown;
        } else if constexpr (std::is_same_v<T, article::ComparisonRef>) {
          j["type"] = "comparison";
          j["target"] = b.comparison.key;
        } else if constexpr (std::is_same_v<T, article::VisualizationRef>) {
          j["type"] = "visualization";
          j["target"] = b.visualization.key;
        } else if constexpr (std::is_same_v<T, article::OntologyTable>) {
          j["type"] = "ontology-table";
          j["entities"] = refList(b.entities);
        } else {
          j["type"] =
              b.kind == article::EntityTableKind::Resources ? "resource-table" : "property-table";
          j["entities"] = refList(b.entities);
        }
      },
      s.body);
  return j;
}

json articleJson(const GraphView& view, const article::Article& a) {
  json sections = json::array();
  for (const auto& s : a.sections) sections.push_back(sectionJson(s));
  return {{"id", a.id.key},
          {"title", a.title},
          {"researchField", {{"id", a.researchField.key}, {"label", view.label(a.researchField)}}},
          {"contribution", a.contribution.key},
          {"sections", sections},
          {"contributors", render::acknowledgements(view, a.id)},
          {"readingTimeMinutes", render::readingTimeMinutes(render::articleWordCount(view, a.id))}};
}

json valueJson(const GraphView& view, const EntityId& v) {
  if (v.kind == EntityKind::Literal) {
    const auto* e = view.entity(v);
    if (e && e->literal)
      return {{"literal", e->literal->value}, {"datatype", e->literal->datatype}};
  }
  return {{"resource", refText(v)}, {"label", view.label(v)}};
}

json comparisonJson(const GraphView& view, const article::Comparison& c) {
  json columns = json::array();
  for (const auto& col : c.columns) {
    columns.push_back({{"paper", col.paper.key},
                       {"contribution", col.contribution.key},
                       {"title", view.literalValue(col.paper, vocab::kTitle).value_or("")}});
  }
  json rows = json::array();
  for (const auto& p : c.rows) rows.push_back({{"property", p.key}, {"label", view.label(p)}});
  json cells = json::array();
  for (const auto& [key, values] : c.cells) {
    json vs = json::array();
    for (const auto& v : values) vs.push_back(valueJson(view, v));
    cells.push_back(
        {{"contribution", key.first.key}, {"property", key.second.key}, {"values", vs}});
  }
  return {
      {"id", c.id.key}, {"label", c.label}, {"columns", columns}, {"rows", rows}, {"cells", cells}};
}

std::vector<article::CellValue> cellValues(const json& j) {
  std::vector<article::CellValue> out;
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "values must be a list");
  for (const auto& v : j) {
    if (v.is_string()) {
      out.emplace_back(graph::LiteralValue{v.get<std::string>(), std::string(vocab::kXsdString)});
    } else if (v.is_object() && v.contains("resource")) {
      out.emplace_back(entityRef(v["resource"]));
    } else if (v.is_object() && v.contains("literal") && v["literal"].is_string()) {
      std::string dt = v.value("datatype", std::string(vocab::kXsdString));
      out.emplace_back(graph::LiteralValue{v["literal"].get<std::string>(), dt});
    } else {
      throw Error(ErrorCode::InvalidArgument, "cell values are strings, {resource} or {literal}");
    }
  }
  return out;
}

json versionJson(const versioning::VersionSummary& v) {
  return {{"versionId", v.versionId},
          {"timestamp", graph::formatTimestamp(v.timestamp)},
          {"description", v.description},
          {"editorCount", v.editorCount}};
}

json diffJson(const versioning::VersionDiff& d) {
  auto statements = [](const std::vector<versioning::DiffStatement>& list) {
    json out = json::array();
    for (const auto& s : list) out.push_back(s.text);
    return out;
  };
  json texts = json::array();
  for (const auto& td : d.textDiffs) {
    json hunks = json::array();
    for (const auto& h : td.hunks) {
      json lines = json::array();
      for (const auto& l : h.lines) {
        char op = l.op == versioning::DiffLine::Op::Keep  ? ' '
                  : l.op == versioning::DiffLine::Op::Add ? '+'
                                                          : '-';
        lines.push_back(std::string(1, op) + l.text);
      }
      hunks.push_back({{"fromStart", h.fromStart},
                       {"fromCount", h.fromCount},
                       {"toStart", h.toStart},
                       {"toCount", h.toCount},
                       {"lines", lines}});
    }
    texts.push_back({{"section", td.section.key}, {"heading", td.heading}, {"hunks", hunks}});
  }
  return {{"added", statements(d.added)}, {"removed", statements(d.removed)}, {"textDiffs", texts}};
}

bool accepts(const httplib::Request& req, std::string_view type) {
  return req.get_header_value("Accept").find(type) != std::string::npos;
}

rdf::RdfFormat rdfFormat(const httplib::Request& req) {
  auto f = req.get_param_value("format");
  if (f == "turtle" || f == "ttl" || (f.empty() && accepts(req, "text/turtle"))) {
    return rdf::RdfFormat::Turtle;
  }
  return rdf::RdfFormat::NTriples;
}

bool isMutating(const std::string& method) {
  return method == "POST" || method == "PUT" || method == "PATCH" || method == "DELETE";
}

// Requests that change nothing the graph attributes to a user.
bool exemptFromAuth(const httplib::Request& req) {
  return req.method == "POST" && (req.path == "/accounts" || req.path == "/sparql");
}

}  // namespace

struct Service::Impl {
  Platform& platform;
  ServiceOptions options;
  httplib::Server server;
  std::mutex rateMutex;
  std::map<std::string, std::pair<std::int64_t, std::size_t>> writes;  // user -> (minute, count)

  Impl(Platform& p, ServiceOptions o) : platform(p), options(o) { routes(); }

  std::optional<std::string> bearer(const httplib::Request& req) const {
    auto header = req.get_header_value("Authorization");
    constexpr std::string_view kPrefix = "Bearer ";
    if (header.size() <= kPrefix.size() || !header.starts_with(kPrefix)) return std::nullopt;
    return header.substr(kPrefix.size());
  }

  // Resolves the caller's account; only reachable after the pre-routing check.
  graph::Provenance caller(const httplib::Request& req) {
    auto token = bearer(req);
    if (!token) throw Error(ErrorCode::Unauthorized, "missing bearer token");
    return {platform.accounts().authenticate(*token), graph::nowMillis()};
  }

  void countWrite(const std::string& user) {
    if (options.maxWritesPerMinute == 0) return;
    auto minute = std::chrono::duration_cast<std::chrono::minutes>(
                      std::chrono::system_clock::now().time_since_epoch())
                      .count();
    std::lock_guard lock(rateMutex);
    auto& [window, count] = writes[user];
    if (window != minute) {
      window = minute;
      count = 0;
    }
    if (++count > options.maxWritesPerMinute) {
      throw Error(ErrorCode::RateLimited, "too many write requests");
    }
  }

  template <class F>
  httplib::Server::Handler guard(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const Error& e) {
        sendJson(res, errorJson(e), httpStatus(e.code()));
      } catch (const json::exception& e) {
        sendJson(res, {{"error", "InvalidArgument"}, {"message", e.what()}}, 400);
      } catch (const std::exception& e) {
        sendJson(res, {{"error", "Internal"}, {"message", e.what()}}, 500);
      }
    };
  }

  GraphView articleHead(const EntityId& id) {
    return platform.store().read(
        [&](const GraphState& g) { return versioning::captureHead(g, id).fullView(); });
  }

  json readArticleJson(const EntityId& id) {
    auto view = articleHead(id);
    return articleJson(view, article::readArticle(view, id));
  }

  render::RenderOptions renderOptions(std::string label) {
    render::RenderOptions o;
    o.versionLabel = std::move(label);
    o.displayName = [this](const std::string& u) { return platform.accounts().displayName(u); };
    return o;
  }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, PATCH, DELETE, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Authorization, Content-Type, Accept");
      res.status = 204;
    });

    server.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
      if (!isMutating(req.method) || exemptFromAuth(req)) {
        return httplib::Server::HandlerResponse::Unhandled;
      }
      auto token = bearer(req);
      try {
        if (!token) throw Error(ErrorCode::Unauthorized, "missing bearer token");
        auto user = platform.accounts().authenticate(*token);
        countWrite(user);
      } catch (const Error& e) {
        sendJson(res, errorJson(e), httpStatus(e.code()));
        return httplib::Server::HandlerResponse::Handled;
      }
      return httplib::Server::HandlerResponse::Unhandled;
    });

    server.Post("/accounts", guard([this](const auto& req, auto& res) {
                  auto body = parseBody(req);
                  auto reg =
                      platform.accounts().registerAccount(requireString(body, "displayName"));
                  sendJson(res,
                           {{"userId", reg.account.userId},
                            {"displayName", reg.account.displayName},
                            {"token", reg.token}},
                           201);
                }));

    server.Get("/articles", guard([this](const auto&, auto& res) {
                 auto head = platform.store().headView();
                 json out = json::array();
                 for (const auto& id : article::listArticles(head)) {
                   out.push_back(
                       {{"id", id.key},
                        {"title", head.literalValue(id, vocab::kTitle).value_or(head.label(id))}});
                 }
                 sendJson(res, out);
               }));

    server.Post(
        "/articles", guard([this](const auto& req, auto& res) {
          auto p = caller(req);
          auto body = parseBody(req);
          auto field =
              entityRef(body.value("researchField", json(std::string(vocab::kInformationScience))));
          auto a = platform.articles().createArticle(requireString(body, "title"), field, p);
          sendJson(res, readArticleJson(a.id), 201);
        }));

    server.Get(R"(/articles/([^/]+))", guard([this](const auto& req, auto& res) {
                 sendJson(res, readArticleJson(EntityId::resource(req.matches[1])));
               }));

    server.Post(
        R"(/articles/([^/]+)/sections)", guard([this](const auto& req, auto& res) {
          auto p = caller(req);
          auto body = parseBody(req);
          EntityId id = EntityId::resource(req.matches[1]);
          auto section = platform.store().write([&](GraphState& g) {
            std::size_t position =
                body.contains("position")
                    ? body["position"].template get<std::size_t>()
                    : article::readArticle(article::ops::articleView(g, id), id).sections.size();
            return article::ops::addSection(g, id, position, body.value("heading", ""),
                                            sectionBody(body), p);
          });
          sendJson(res, sectionJson(section), 201);
        }));

    server.Patch(R"(/sections/([^/]+))", guard([this](const auto& req, auto& res) {
                   auto p = caller(req);
                   auto body = parseBody(req);
                   EntityId id = EntityId::resource(req.matches[1]);
                   auto articleId = platform.store().write([&](GraphState& g) {
                     auto owner = article::ops::articleOfSection(g, id);
                     if (!owner)
                       throw Error(ErrorCode::UnknownSection, "unknown section " + id.key);
                     std::optional<SectionBody> newBody;
                     if (body.contains("type")) newBody = sectionBody(body);
                     auto heading = optionalString(body, "heading");
                     if (heading || newBody)
                       article::ops::updateSection(g, id, heading, newBody, p);
                     if (body.contains("position")) {
                       auto position = body["position"].template get<std::size_t>();
                       auto current =
                           article::readArticle(article::ops::articleView(g, *owner), *owner);
                       std::vector<EntityId> order;
                       for (const auto& s : current.sections) {
                         if (s.id != id) order.push_back(s.id);
                       }
                       if (position > order.size()) {
                         throw Error(ErrorCode::InvalidPosition, "position out of range");
                       }
                       order.insert(order.begin() + static_cast<std::ptrdiff_t>(position), id);
                       article::ops::reorderSections(g, *owner, order, p);
                     }
                     return *owner;
                   });
                   sendJson(res, readArticleJson(articleId));
                 }));

    server.Delete(R"(/sections/([^/]+))", guard([this](const auto& req, auto& res) {
                    auto p = caller(req);
                    auto a =
                        platform.articles().deleteSection(EntityId::resource(req.matches[1]), p);
                    sendJson(res, readArticleJson(a.id));
                  }));

    server.Post(
        "/papers", guard([this](const auto& req, auto& res) {
          auto p = caller(req);
          auto body = parseBody(req);
          article::PaperInput input;
          input.title = requireString(body, "title");
          if (body.contains("authors"))
            input.authors = body["authors"].template get<std::vector<std::string>>();
          input.publicationDate = optionalString(body, "date").value_or("");
          auto paper = platform.articles().createPaper(input, p);
          json contributions = json::array();
          for (const auto& c : paper.contributions) contributions.push_back(c.key);
          sendJson(res,
                   {{"id", paper.id.key}, {"title", paper.title}, {"contributions", contributions}},
                   201);
        }));

    server.Post(
        "/entities", guard([this](const auto& req, auto& res) {
          auto p = caller(req);
          auto body = parseBody(req);
          auto kind = graph::kindFromName(requireString(body, "kind"));
          if (!kind || (*kind != EntityKind::Resource && *kind != EntityKind::Predicate)) {
            throw Error(ErrorCode::InvalidKind, "kind must be resource or predicate");
          }
          auto description = optionalString(body, "description");
          auto sameAs = optionalString(body, "sameAs");
          auto id = platform.store().write([&](GraphState& g) {
            graph::EntitySpec spec;
            spec.kind = *kind;
            spec.label = requireString(body, "label");
            auto created = g.createEntity(spec, p);
            if (description || sameAs) {
              article::ops::describeEntity(g, created, description.value_or(""), sameAs, p);
            }
            return created;
          });
          sendJson(res, {{"id", refText(id)}, {"key", id.key}, {"kind", graph::kindName(id.kind)}},
                   201);
        }));

    server.Get(
        "/entities", guard([this](const auto& req, auto& res) {
          auto kind =
              graph::kindFromName(req.has_param("kind") ? req.get_param_value("kind") : "resource");
          if (!kind) throw Error(ErrorCode::InvalidKind, "unknown entity kind");
          json out = json::array();
          for (const auto& e : platform.store().suggestEntities(*kind, req.get_param_value("q"))) {
            out.push_back({{"id", refText(e.id)}, {"key", e.id.key}, {"label", e.label}});
          }
          sendJson(res, out);
        }));

    server.Post("/comparisons", guard([this](const auto& req, auto& res) {
                  auto p = caller(req);
                  auto body = parseBody(req);
                  auto c = platform.store().write([&](GraphState& g) {
                    std::vector<article::ComparisonColumn> columns;
                    for (const auto& col : body.value("columns", json::array())) {
                      article::ComparisonColumn column;
                      column.paper = entityRef(col.at("paper"));
                      if (col.contains("contribution")) {
                        column.contribution = entityRef(col["contribution"]);
                      } else {
                        auto contributions =
                            article::readPaper(g.view(g.traverseSubgraph(column.paper)),
                                               column.paper)
                                .contributions;
                        if (contributions.empty()) {
                          throw Error(ErrorCode::DanglingReference, "paper has no contribution");
                        }
                        column.contribution = contributions.front();
                      }
                      columns.push_back(column);
                    }
                    auto properties = entityList(body, "properties", EntityKind::Predicate);
                    std::vector<article::CellInput> cells;
                    for (const auto& cell : body.value("cells", json::array())) {
                      cells.push_back({entityRef(cell.at("contribution")),
                                       entityRef(cell.at("property"), EntityKind::Predicate),
                                       cellValues(cell.value("values", json::array()))});
                    }
                    return article::ops::createComparison(g, requireString(body, "label"), columns,
                                                          properties, cells, p);
                  });
                  auto view = platform.store().read(
                      [&](const GraphState& g) { return g.view(g.traverseSubgraph(c.id)); });
                  sendJson(res, comparisonJson(view, article::readComparison(view, c.id)), 201);
                }));

    server.Get(R"(/comparisons/([^/]+))", guard([this](const auto& req, auto& res) {
                 auto c = platform.articles().comparison(EntityId::resource(req.matches[1]));
                 sendJson(res, comparisonJson(platform.store().headView(), c));
               }));

    server.Get(R"(/comparisons/([^/]+)/csv)", guard([this](const auto& req, auto& res) {
                 EntityId id = EntityId::resource(req.matches[1]);
                 platform.articles().comparison(id);  // existence check
                 res.set_content(render::comparisonCsv(platform.store().headView(), id),
                                 "text/csv");
               }));

    server.Patch(R"(/comparisons/([^/]+)/cells)", guard([this](const auto& req, auto& res) {
                   auto p = caller(req);
                   auto body = parseBody(req);
                   EntityId id = EntityId::resource(req.matches[1]);
                   auto c = platform.articles().setCell(
                       id, entityRef(body.at("contribution")),
                       entityRef(body.at("property"), EntityKind::Predicate),
                       cellValues(body.value("values", json::array())), p);
                   sendJson(res, comparisonJson(platform.store().headView(), c));
                 }));

    server.Post(
        "/visualizations", guard([this](const auto& req, auto& res) {
          auto p = caller(req);
          auto body = parseBody(req);
          auto kind = article::parseChartKind(body.value("chart", "Table"));
          if (!kind)
            throw Error(ErrorCode::InvalidArgument, "chart must be Table, BarChart or LineChart");
          auto v = platform.articles().createVisualization(
              entityRef(body.at("comparison")), *kind,
              entityRef(body.at("series"), EntityKind::Predicate), body.value("label", ""), p);
          sendJson(res,
                   {{"id", v.id.key},
                    {"comparison", v.comparison.key},
                    {"chart", std::string(article::chartKindName(v.chartKind))},
                    {"series", v.seriesProperty.key},
                    {"label", v.label}},
                   201);
        }));

    server.Post(
        R"(/articles/([^/]+)/publish)", guard([this](const auto& req, auto& res) {
          auto p = caller(req);
          auto body = parseBody(req);
          auto v = platform.versions().publish(EntityId::resource(req.matches[1]),
                                               body.value("description", ""), p);
          std::set<std::string> editors;
          for (const auto& s : v->statements) editors.insert(s.provenance.userId);
          sendJson(res, versionJson({v->versionId, v->timestamp, v->description, editors.size()}),
                   201);
        }));

    server.Get(
        R"(/articles/([^/]+)/versions)", guard([this](const auto& req, auto& res) {
          json out = json::array();
          for (const auto& v : platform.versions().list(EntityId::resource(req.matches[1]))) {
            out.push_back(versionJson(v));
          }
          sendJson(res, out);
        }));

    server.Get(R"(/articles/([^/]+)/versions/([^/]+)/(html|rdf))",
               guard([this](const auto& req, auto& res) {
                 EntityId id = EntityId::resource(req.matches[1]);
                 auto ref = versioning::parseVersionRef(req.matches[2].str());
                 if (!ref || !*ref) throw Error(ErrorCode::UnknownVersion, "unknown version");
                 auto v = platform.versions().get(id, *ref);
                 if (req.matches[3] == "html") {
                   auto label = "Version " + std::to_string(v->versionId);
                   res.set_content(
                       render::renderArticle(v->fullView(), id, renderOptions(label)).html,
                       "text/html; charset=utf-8");
                 } else {
                   auto format = rdfFormat(req);
                   res.set_content(rdf::exportRdf(v->statementView(), format),
                                   std::string(rdf::mediaType(format)));
                 }
               }));

    server.Get(R"(/articles/([^/]+)/diff)", guard([this](const auto& req, auto& res) {
                 EntityId id = EntityId::resource(req.matches[1]);
                 auto ref = [&](const char* name, const char* fallback) {
                   std::string text = req.has_param(name) ? req.get_param_value(name) : fallback;
                   auto r = versioning::parseVersionRef(text);
                   if (!r) throw Error(ErrorCode::UnknownVersion, "bad version '" + text + "'");
                   return *r;
                 };
                 auto diff = platform.versions().diff(id, ref("from", "1"), ref("to", "HEAD"));
                 if (accepts(req, "text/plain")) {
                   res.set_content(versioning::formatDiff(diff), "text/plain; charset=utf-8");
                 } else {
                   sendJson(res, diffJson(diff));
                 }
               }));

    server.Get(R"(/articles/([^/]+)/html)", guard([this](const auto& req, auto& res) {
                 EntityId id = EntityId::resource(req.matches[1]);
                 res.set_content(
                     render::renderArticle(articleHead(id), id, renderOptions("Head version")).html,
                     "text/html; charset=utf-8");
               }));

    server.Get(R"(/articles/([^/]+)/rdf)", guard([this](const auto& req, auto& res) {
                 EntityId id = EntityId::resource(req.matches[1]);
                 auto v = platform.versions().get(id, std::nullopt);
                 auto format = rdfFormat(req);
                 res.set_content(rdf::exportRdf(v->statementView(), format),
                                 std::string(rdf::mediaType(format)));
               }));

    server.Get("/rdf/dump", guard([this](const auto& req, auto& res) {
                 auto format = rdfFormat(req);
                 res.set_content(rdf::exportRdf(platform.store().headView(), format),
                                 std::string(rdf::mediaType(format)));
               }));

    server.Post("/sparql", guard([this](const auto& req, auto& res) {
                  std::string text = req.body;
                  if (req.get_header_value("Content-Type")
                          .starts_with("application/x-www-form-urlencoded")) {
                    text = req.get_param_value("query");
                  }
                  auto plan = sparql::parseQuery(text);
                  auto view = platform.store().headView();
                  auto table = sparql::execute(plan, view);
                  if (accepts(req, "text/csv")) {
                    res.set_content(sparql::toCsv(table, view), "text/csv");
                  } else {
                    res.set_content(sparql::toJson(table, view), "application/sparql-results+json");
                  }
                }));
  }
};

Service::Service(Platform& platform, ServiceOptions options)
    : impl_(std::make_unique<Impl>(platform, options)) {}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Service::run() { return impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_) impl_->server.stop();
}

void Service::waitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace smartreview::service
