#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "smartreview/article/article.hpp"
#include "smartreview/graph/store.hpp"

namespace smartreview::versioning {

using graph::EntityId;
using graph::Statement;

// A frozen copy of an article subgraph. `statements` is exactly the traversal
// at publish time; `context` holds the vocabulary descriptions renders need.
struct PublishedVersion {
  EntityId articleId;
  int versionId = 0;  // 0 for an unsaved head snapshot
  graph::Timestamp timestamp{};
  std::string description;
  std::string publishedBy;
  std::vector<Statement> statements;
  std::vector<Statement> context;
  std::map<EntityId, graph::Entity> entities;

  // Statements only: what exports and diffs see.
  graph::GraphView statementView() const;
  // Statements plus context: what renders see.
  graph::GraphView fullView() const;
};

struct VersionSummary {
  int versionId = 0;
  graph::Timestamp timestamp{};
  std::string description;
  std::size_t editorCount = 0;
};

// nullopt addresses the head version.
using VersionRef = std::optional<int>;

std::string versionRefName(const VersionRef& ref);
// "HEAD", "head", "3", "v3".
std::optional<VersionRef> parseVersionRef(std::string_view text);

struct DiffStatement {
  graph::Triple triple;
  std::string text;  // readable form: keys, literals quoted with datatype
  bool operator==(const DiffStatement& o) const { return triple == o.triple; }
};

struct DiffLine {
  enum class Op { Keep, Add, Remove };
  Op op = Op::Keep;
  std::string text;
  bool operator==(const DiffLine&) const = default;
};

struct TextHunk {
  std::size_t fromStart = 0;  // 1-based line numbers, as in unified diffs
  std::size_t fromCount = 0;
  std::size_t toStart = 0;
  std::size_t toCount = 0;
  std::vector<DiffLine> lines;
};

struct TextDiff {
  EntityId section;
  std::string heading;
  std::vector<TextHunk> hunks;
};

struct VersionDiff {
  std::vector<DiffStatement> added;    // sorted by triple
  std::vector<DiffStatement> removed;  // sorted by triple
  std::vector<TextDiff> textDiffs;     // natural-text sections whose markdown differs
  bool empty() const { return added.empty() && removed.empty() && textDiffs.empty(); }
};

// Line diff with `context` unchanged lines around each change.
std::vector<TextHunk> diffLines(std::string_view from, std::string_view to,
                                std::size_t context = 2);

VersionDiff diffSnapshots(const PublishedVersion& from, const PublishedVersion& to);

// Unified-diff style text for the CLI and text/plain responses.
std::string formatDiff(const VersionDiff& diff);

// Captures the article's current subgraph without storing it.
PublishedVersion captureHead(const graph::GraphState& g, const EntityId& articleId);

// Published versions per article. Publishing takes a consistent cut under the
// store lock; version bookkeeping has its own lock, so listings and diffs run
// concurrently with edits. With a directory, each version is written as
// <dir>/<article>/v<N>.nt (sorted N-Triples) and v<N>.json (metadata and the
// exact statements), and reloaded on construction.
class Versions {
 public:
  explicit Versions(graph::Store& store, std::optional<std::filesystem::path> dir = std::nullopt);

  // UnknownArticle; EmptyArticle when the head has no sections.
  std::shared_ptr<const PublishedVersion> publish(const EntityId& articleId,
                                                  const std::string& description,
                                                  const graph::Provenance& p);
  // Chronological; UnknownArticle when the article has never existed.
  std::vector<VersionSummary> list(const EntityId& articleId) const;
  // UnknownVersion for missing versions; the head is captured on demand.
  std::shared_ptr<const PublishedVersion> get(const EntityId& articleId,
                                              const VersionRef& ref) const;
  VersionDiff diff(const EntityId& articleId, const VersionRef& from, const VersionRef& to) const;

 private:
  void persist(const PublishedVersion& v) const;
  void load();

  graph::Store& store_;
  std::optional<std::filesystem::path> dir_;
  mutable std::shared_mutex mutex_;
  std::map<EntityId, std::vector<std::shared_ptr<const PublishedVersion>>> versions_;
};

}  // namespace smartreview::versioning
