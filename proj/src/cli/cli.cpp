#include "smartreview/cli/cli.hpp"

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "smartreview/article/fixture.hpp"
#include "smartreview/error.hpp"
#include "smartreview/graph/vocabulary.hpp"
#include "smartreview/rdf/rdf_io.hpp"
#include "smartreview/render/render.hpp"
#include "smartreview/service/service.hpp"
#include "smartreview/sparql/sparql.hpp"

namespace smartreview::cli {

namespace fs = std::filesystem;
using graph::EntityId;

namespace {

const std::string kOperator(graph::vocab::kCliUser);

service::Service* runningService = nullptr;

void stopOnSignal(int) {
  if (runningService) runningService->stop();
}

std::string readInput(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot read " + path);
  buffer << file.rdbuf();
  return buffer.str();
}

void writeOutput(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw Error(ErrorCode::IoError, "cannot write " + path);
}

EntityId articleRef(const std::string& text) {
  std::string key = text.starts_with("orkgr:") ? text.substr(6) : text;
  if (!graph::isValidKey(key))
    throw Error(ErrorCode::InvalidArgument, "invalid article id '" + text + "'");
  return EntityId::resource(key);
}

versioning::VersionRef versionRef(const std::string& text) {
  auto ref = versioning::parseVersionRef(text);
  if (!ref) throw Error(ErrorCode::InvalidArgument, "invalid version '" + text + "'");
  return *ref;
}

rdf::RdfFormat rdfFormat(const std::string& name) {
  if (name == "nt" || name == "ntriples") return rdf::RdfFormat::NTriples;
  if (name == "ttl" || name == "turtle") return rdf::RdfFormat::Turtle;
  throw Error(ErrorCode::InvalidArgument, "unknown RDF format '" + name + "'");
}

fs::path defaultDataDir() {
  if (const char* env = std::getenv("SMARTREVIEW_DATA_DIR"); env && *env) return env;
  return "smartreview-data";
}

render::RenderOptions renderOptions(service::Platform& platform, std::string label) {
  render::RenderOptions o;
  o.versionLabel = std::move(label);
  o.displayName = [&platform](const std::string& u) { return platform.accounts().displayName(u); };
  return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Living literature reviews backed by a knowledge graph", "smartreview"};
  app.require_subcommand(1);
  std::string dataDir = defaultDataDir().string();
  app.add_option("--data-dir", dataDir, "Data directory (default $SMARTREVIEW_DATA_DIR)");

  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t rateLimit = 0;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", host);
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--max-writes-per-minute", rateLimit, "Per-user write limit, 0 for none");
  serve->add_option("--data-dir", dataDir);

  auto* seed = app.add_subcommand("seed-fixture", "Load the bundled example review");

  std::string queryFile;
  auto* query = app.add_subcommand("query", "Run a SPARQL query, print CSV");
  query->add_option("file", queryFile, "Query file or - for stdin")->required();

  std::string article, version, format = "nt", outFile;
  bool withProvenance = false;
  auto* exportRdf = app.add_subcommand("export-rdf", "Print the graph as RDF");
  exportRdf->add_option("--article", article);
  exportRdf->add_option("--version", version, "Published version number, or HEAD")
      ->needs(exportRdf->get_option("--article"));
  exportRdf->add_option("--format", format, "nt or ttl");
  exportRdf->add_flag("--provenance", withProvenance, "Annotate statements with user and time");
  exportRdf->add_option("-o,--output", outFile);

  std::string importFile;
  auto* importRdf = app.add_subcommand("import-rdf", "Import N-Triples");
  importRdf->add_option("file", importFile, "N-Triples file or - for stdin")->required();

  auto* renderCmd = app.add_subcommand("render", "Render an article to HTML");
  renderCmd->add_option("article", article)->required();
  renderCmd->add_option("--version", version, "Published version number, or HEAD");
  renderCmd->add_option("-o,--output", outFile);

  std::string message;
  std::string user = kOperator;
  auto* publish = app.add_subcommand("publish", "Freeze the article as a new version");
  publish->add_option("article", article)->required();
  publish->add_option("-m,--message", message, "Version description")->required();
  publish->add_option("--user", user, "Account or user id recorded as publisher");

  std::string from, to;
  auto* diff = app.add_subcommand("diff", "Compare two versions (HEAD for the current state)");
  diff->add_option("article", article)->required();
  diff->add_option("from", from)->required();
  diff->add_option("to", to)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    service::Platform platform{fs::path(dataDir)};

    if (*serve) {
      service::Service svc(platform, {.maxWritesPerMinute = rateLimit});
      int bound = svc.bind(host, port);
      if (bound < 0)
        throw Error(ErrorCode::IoError, "cannot bind " + host + ":" + std::to_string(port));
      out << "listening on http://" << host << ":" << bound << std::endl;
      runningService = &svc;
      std::signal(SIGINT, stopOnSignal);
      std::signal(SIGTERM, stopOnSignal);
      bool ok = svc.run();
      runningService = nullptr;
      return ok ? 0 : 2;
    }
    if (*seed) {
      auto before = platform.store().logSize();
      auto id = article::seedFixture(platform.store());
      out << id.key << (platform.store().logSize() == before ? " (already present)" : "") << "\n";
      return 0;
    }
    if (*query) {
      auto plan = sparql::parseQuery(readInput(queryFile, in));
      auto view = platform.store().headView();
      out << sparql::toCsv(sparql::execute(plan, view), view);
      return 0;
    }
    if (*exportRdf) {
      auto fmt = rdfFormat(format);
      rdf::ExportOptions options{withProvenance};
      std::string text;
      if (article.empty()) {
        text = rdf::exportRdf(platform.store().headView(), fmt, {}, options);
      } else {
        auto v = platform.versions().get(articleRef(article),
                                         versionRef(version.empty() ? "HEAD" : version));
        text = rdf::exportRdf(v->statementView(), fmt, {}, options);
      }
      writeOutput(outFile, text, out);
      return 0;
    }
    if (*importRdf) {
      auto added = rdf::importNTriples(platform.store(), readInput(importFile, in));
      err << "imported " << added << " statements\n";
      return 0;
    }
    if (*renderCmd) {
      auto id = articleRef(article);
      auto ref = versionRef(version.empty() ? "HEAD" : version);
      auto v = platform.versions().get(id, ref);
      auto label = ref ? "Version " + std::to_string(*ref) : std::string("Head version");
      writeOutput(outFile,
                  render::renderArticle(v->fullView(), id, renderOptions(platform, label)).html,
                  out);
      return 0;
    }
    if (*publish) {
      std::string publisher = user;
      if (auto account = platform.accounts().find(user)) {
        publisher = account->userId;
      } else if (user == kOperator) {
        platform.store().registerUser(kOperator);
      }
      auto v = platform.versions().publish(articleRef(article), message,
                                           {publisher, graph::nowMillis()});
      out << "v" << v->versionId << "\n";
      return 0;
    }
    if (*diff) {
      out << versioning::formatDiff(
          platform.versions().diff(articleRef(article), versionRef(from), versionRef(to)));
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::IoError ? 2 : 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace smartreview::cli
