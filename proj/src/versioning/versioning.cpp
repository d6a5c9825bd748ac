#include "smartreview/versioning/versioning.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "smartreview/error.hpp"
#include "smartreview/graph/vocabulary.hpp"
#include "smartreview/rdf/rdf_io.hpp"

namespace smartreview::versioning {

using graph::EntityKind;
using graph::GraphState;
using graph::GraphView;
using json = nlohmann::json;
namespace vocab = graph::vocab;

namespace {

std::vector<Statement> merged(const std::vector<Statement>& a, const std::vector<Statement>& b) {
  std::vector<Statement> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end(),
            [](const Statement& x, const Statement& y) { return x.id < y.id; });
  return out;
}

std::map<EntityId, graph::Entity> referenced(const std::map<EntityId, graph::Entity>& all,
                                             const std::vector<Statement>& statements) {
  std::map<EntityId, graph::Entity> out;
  for (const auto& s : statements) {
    for (const auto* id : {&s.subject(), &s.predicate(), &s.object()}) {
      auto it = all.find(*id);
      if (it != all.end()) out.emplace(it->first, it->second);
    }
  }
  return out;
}

std::string termText(const GraphView& view, const EntityId& id) {
  switch (id.kind) {
    case EntityKind::Resource:
      return "orkgr:" + id.key;
    case EntityKind::Predicate:
      return "orkgp:" + id.key;
    case EntityKind::Class:
      return "orkgc:" + id.key;
    case EntityKind::Literal:
      break;
  }
  const auto* e = view.entity(id);
  if (!e || !e->literal) return id.key;
  return json(e->literal->value).dump() + "^^" + e->literal->datatype;
}

std::vector<std::string> splitLines(std::string_view text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, end - start));
    start = end + 1;
    if (start == text.size()) break;
  }
  return out;
}

std::map<EntityId, std::pair<std::string, std::string>> textSections(const PublishedVersion& v) {
  std::map<EntityId, std::pair<std::string, std::string>> out;
  auto view = v.fullView();
  for (const auto& s : article::readArticle(view, v.articleId).sections) {
    if (const auto* t = std::get_if<article::NaturalText>(&s.body)) {
      out[s.id] = {s.heading, t->markdown};
    }
  }
  return out;
}

// --- sidecar JSON ---

json entityToJson(const graph::Entity& e) {
  json j = {{"id", graph::toString(e.id)}, {"label", e.label}};
  if (e.literal) j["literal"] = {{"value", e.literal->value}, {"datatype", e.literal->datatype}};
  if (e.shared) j["shared"] = true;
  return j;
}

graph::Entity entityFromJson(const json& j) {
  graph::Entity e;
  auto id = graph::parseEntityId(j.at("id").get<std::string>());
  if (!id) throw Error(ErrorCode::ParseError, "bad entity id in version sidecar");
  e.id = *id;
  e.label = j.value("label", "");
  if (j.contains("literal")) {
    e.literal = graph::LiteralValue{j["literal"].at("value"), j["literal"].at("datatype")};
  }
  e.shared = j.value("shared", false);
  return e;
}

json statementToJson(const Statement& s) {
  return {graph::toString(s.id),
          graph::toString(s.subject()),
          graph::toString(s.predicate()),
          graph::toString(s.object()),
          s.provenance.userId,
          graph::formatTimestamp(s.provenance.timestamp)};
}

Statement statementFromJson(const json& j) {
  auto id = graph::parseStatementId(j.at(0).get<std::string>());
  auto s = graph::parseEntityId(j.at(1).get<std::string>());
  auto p = graph::parseEntityId(j.at(2).get<std::string>());
  auto o = graph::parseEntityId(j.at(3).get<std::string>());
  auto ts = graph::parseTimestamp(j.at(5).get<std::string>());
  if (!id || !s || !p || !o || !ts) {
    throw Error(ErrorCode::ParseError, "bad statement in version sidecar");
  }
  return Statement{*id, {*s, *p, *o}, {j.at(4).get<std::string>(), *ts}};
}

json versionToJson(const PublishedVersion& v) {
  json j;
  j["versionId"] = v.versionId;
  j["articleId"] = v.articleId.key;
  j["timestamp"] = graph::formatTimestamp(v.timestamp);
  j["description"] = v.description;
  j["publishedBy"] = v.publishedBy;
  j["statements"] = json::array();
  for (const auto& s : v.statements) j["statements"].push_back(statementToJson(s));
  j["context"] = json::array();
  for (const auto& s : v.context) j["context"].push_back(statementToJson(s));
  j["entities"] = json::array();
  for (const auto& [id, e] : v.entities) j["entities"].push_back(entityToJson(e));
  return j;
}

PublishedVersion versionFromJson(const json& j) {
  PublishedVersion v;
  v.versionId = j.at("versionId");
  v.articleId = EntityId::resource(j.at("articleId"));
  auto ts = graph::parseTimestamp(j.at("timestamp").get<std::string>());
  if (!ts) throw Error(ErrorCode::ParseError, "bad timestamp in version sidecar");
  v.timestamp = *ts;
  v.description = j.value("description", "");
  v.publishedBy = j.value("publishedBy", "");
  for (const auto& s : j.at("statements")) v.statements.push_back(statementFromJson(s));
  for (const auto& s : j.at("context")) v.context.push_back(statementFromJson(s));
  for (const auto& e : j.at("entities")) {
    auto entity = entityFromJson(e);
    v.entities.emplace(entity.id, std::move(entity));
  }
  return v;
}

void writeFileAtomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

GraphView PublishedVersion::statementView() const {
  return GraphView(statements, referenced(entities, statements));
}

GraphView PublishedVersion::fullView() const {
  auto all = merged(statements, context);
  auto used = referenced(entities, all);
  return GraphView(std::move(all), std::move(used));
}

std::string versionRefName(const VersionRef& ref) { return ref ? std::to_string(*ref) : "HEAD"; }

std::optional<VersionRef> parseVersionRef(std::string_view text) {
  if (text == "HEAD" || text == "head") return VersionRef{};
  if (!text.empty() && (text.front() == 'v' || text.front() == 'V')) text.remove_prefix(1);
  int n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || n < 1) {
    return std::nullopt;
  }
  return VersionRef{n};
}

std::vector<TextHunk> diffLines(std::string_view fromText, std::string_view toText,
                                std::size_t context) {
  auto a = splitLines(fromText);
  auto b = splitLines(toText);
  // Longest common subsequence table, suffix form.
  std::vector<std::vector<std::size_t>> lcs(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = a.size(); i-- > 0;) {
    for (std::size_t j = b.size(); j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  struct Edit {
    DiffLine line;
    std::size_t ai, bi;  // positions before this edit
  };
  std::vector<Edit> script;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && a[i] == b[j]) {
      script.push_back({{DiffLine::Op::Keep, a[i]}, i, j});
      ++i, ++j;
    } else if (i < a.size() && (j == b.size() || lcs[i + 1][j] >= lcs[i][j + 1])) {
      script.push_back({{DiffLine::Op::Remove, a[i]}, i, j});
      ++i;
    } else {
      script.push_back({{DiffLine::Op::Add, b[j]}, i, j});
      ++j;
    }
  }

  std::vector<TextHunk> hunks;
  std::size_t k = 0;
  while (k < script.size()) {
    if (script[k].line.op == DiffLine::Op::Keep) {
      ++k;
      continue;
    }
    std::size_t begin = k >= context ? k - context : 0;
    while (begin < k && script[begin].line.op != DiffLine::Op::Keep) ++begin;
    // Extend while further changes lie within 2 * context unchanged lines.
    std::size_t end = k;
    std::size_t lastChange = k;
    while (end < script.size()) {
      if (script[end].line.op != DiffLine::Op::Keep) lastChange = end;
      if (end - lastChange > 2 * context) break;
      ++end;
    }
    end = std::min(script.size(), lastChange + 1 + context);
    TextHunk hunk;
    hunk.fromStart = script[begin].ai + 1;
    hunk.toStart = script[begin].bi + 1;
    for (std::size_t x = begin; x < end; ++x) {
      hunk.lines.push_back(script[x].line);
      if (script[x].line.op != DiffLine::Op::Add) ++hunk.fromCount;
      if (script[x].line.op != DiffLine::Op::Remove) ++hunk.toCount;
    }
    if (hunk.fromCount == 0) --hunk.fromStart;
    if (hunk.toCount == 0) --hunk.toStart;
    hunks.push_back(std::move(hunk));
    k = end;
  }
  return hunks;
}

VersionDiff diffSnapshots(const PublishedVersion& from, const PublishedVersion& to) {
  VersionDiff diff;
  auto fromView = from.statementView();
  auto toView = to.statementView();
  auto triples = [](const PublishedVersion& v) {
    std::set<graph::Triple> out;
    for (const auto& s : v.statements) out.insert(s.triple);
    return out;
  };
  auto a = triples(from);
  auto b = triples(to);
  auto text = [](const GraphView& view, const graph::Triple& t) {
    return termText(view, t.subject) + " " + termText(view, t.predicate) + " " +
           termText(view, t.object);
  };
  for (const auto& t : b) {
    if (!a.count(t)) diff.added.push_back({t, text(toView, t)});
  }
  for (const auto& t : a) {
    if (!b.count(t)) diff.removed.push_back({t, text(fromView, t)});
  }

  auto before = textSections(from);
  auto after = textSections(to);
  std::set<EntityId> sections;
  for (const auto& [id, _] : before) sections.insert(id);
  for (const auto& [id, _] : after) sections.insert(id);
  for (const auto& id : sections) {
    auto b4 = before.find(id);
    auto af = after.find(id);
    std::string oldText = b4 == before.end() ? "" : b4->second.second;
    std::string newText = af == after.end() ? "" : af->second.second;
    if (oldText == newText) continue;
    TextDiff td;
    td.section = id;
    td.heading = af != after.end() ? af->second.first : b4->second.first;
    td.hunks = diffLines(oldText, newText);
    diff.textDiffs.push_back(std::move(td));
  }
  return diff;
}

std::string formatDiff(const VersionDiff& diff) {
  std::ostringstream out;
  for (const auto& s : diff.removed) out << "- " << s.text << "\n";
  for (const auto& s : diff.added) out << "+ " << s.text << "\n";
  for (const auto& td : diff.textDiffs) {
    out << "--- " << td.section.key << " (" << td.heading << ")\n";
    for (const auto& h : td.hunks) {
      out << "@@ -" << h.fromStart << "," << h.fromCount << " +" << h.toStart << "," << h.toCount
          << " @@\n";
      for (const auto& l : h.lines) {
        char c = l.op == DiffLine::Op::Keep ? ' ' : l.op == DiffLine::Op::Add ? '+' : '-';
        out << c << l.text << "\n";
      }
    }
  }
  return out.str();
}

PublishedVersion captureHead(const GraphState& g, const EntityId& articleId) {
  if (!g.hasEntity(articleId)) {
    throw Error(ErrorCode::UnknownArticle, "unknown article " + articleId.key);
  }
  PublishedVersion v;
  v.articleId = articleId;
  v.statements = g.traverseSubgraph(articleId);
  bool isArticle = false;
  for (const auto& s : v.statements) {
    if (s.subject() == articleId && s.predicate().key == vocab::kType &&
        s.object().key == vocab::kSmartReview) {
      isArticle = true;
    }
  }
  if (!isArticle) throw Error(ErrorCode::UnknownArticle, "unknown article " + articleId.key);
  v.context = article::ops::contextStatements(g, v.statements);
  auto view = g.view(merged(v.statements, v.context));
  v.entities = view.entities();
  return v;
}

Versions::Versions(graph::Store& store, std::optional<std::filesystem::path> dir)
    : store_(store), dir_(std::move(dir)) {
  if (dir_) load();
}

std::shared_ptr<const PublishedVersion> Versions::publish(const EntityId& articleId,
                                                          const std::string& description,
                                                          const graph::Provenance& p) {
  std::unique_lock lock(mutex_);
  auto v = store_.read([&](const GraphState& g) {
    if (!g.isUserRegistered(p.userId)) {
      throw Error(ErrorCode::UnregisteredUser, "unregistered user '" + p.userId + "'");
    }
    return captureHead(g, articleId);
  });
  if (article::readArticle(v.fullView(), articleId).sections.empty()) {
    throw Error(ErrorCode::EmptyArticle, "article " + articleId.key + " has no sections");
  }
  auto& list = versions_[articleId];
  v.versionId = static_cast<int>(list.size()) + 1;
  v.timestamp = p.timestamp;
  v.description = description;
  v.publishedBy = p.userId;
  if (dir_) persist(v);
  auto stored = std::make_shared<const PublishedVersion>(std::move(v));
  list.push_back(stored);
  return stored;
}

std::vector<VersionSummary> Versions::list(const EntityId& articleId) const {
  std::shared_lock lock(mutex_);
  auto it = versions_.find(articleId);
  if (it == versions_.end()) {
    bool exists = store_.read([&](const GraphState& g) { return g.hasEntity(articleId); });
    if (!exists) throw Error(ErrorCode::UnknownArticle, "unknown article " + articleId.key);
    return {};
  }
  std::vector<VersionSummary> out;
  for (const auto& v : it->second) {
    std::set<std::string> editors;
    for (const auto& s : v->statements) editors.insert(s.provenance.userId);
    out.push_back({v->versionId, v->timestamp, v->description, editors.size()});
  }
  return out;
}

std::shared_ptr<const PublishedVersion> Versions::get(const EntityId& articleId,
                                                      const VersionRef& ref) const {
  if (!ref) {
    return std::make_shared<const PublishedVersion>(
        store_.read([&](const GraphState& g) { return captureHead(g, articleId); }));
  }
  std::shared_lock lock(mutex_);
  auto it = versions_.find(articleId);
  if (it == versions_.end() || *ref < 1 || *ref > static_cast<int>(it->second.size())) {
    throw Error(ErrorCode::UnknownVersion,
                "unknown version " + std::to_string(*ref) + " of " + articleId.key);
  }
  return it->second[*ref - 1];
}

VersionDiff Versions::diff(const EntityId& articleId, const VersionRef& from,
                           const VersionRef& to) const {
  auto a = get(articleId, from);
  auto b = get(articleId, to);
  return diffSnapshots(*a, *b);
}

void Versions::persist(const PublishedVersion& v) const {
  auto dir = *dir_ / rdf::percentEncodeKey(v.articleId.key);
  std::filesystem::create_directories(dir);
  std::string stem = "v" + std::to_string(v.versionId);
  writeFileAtomically(dir / (stem + ".nt"),
                      rdf::exportRdf(v.statementView(), rdf::RdfFormat::NTriples));
  writeFileAtomically(dir / (stem + ".json"), versionToJson(v).dump(1) + "\n");
}

void Versions::load() {
  if (!std::filesystem::exists(*dir_)) return;
  for (const auto& articleDir : std::filesystem::directory_iterator(*dir_)) {
    if (!articleDir.is_directory()) continue;
    std::map<int, PublishedVersion> found;
    for (const auto& file : std::filesystem::directory_iterator(articleDir.path())) {
      if (file.path().extension() != ".json") continue;
      std::ifstream in(file.path(), std::ios::binary);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception&) {
        throw Error(ErrorCode::IoError, "corrupt version file " + file.path().string());
      }
      auto v = versionFromJson(j);
      found.emplace(v.versionId, std::move(v));
    }
    int expected = 1;
    for (auto& [id, v] : found) {
      if (id != expected++) {
        throw Error(ErrorCode::IoError, "gap in versions under " + articleDir.path().string());
      }
      versions_[v.articleId].push_back(std::make_shared<const PublishedVersion>(std::move(v)));
    }
  }
}

}  // namespace smartreview::versioning
