#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smartreview/article/article.hpp"

namespace smartreview::render {

using graph::EntityId;

struct OutlineEntry {
  std::string heading;
  std::string anchor;
  int level = 2;
};

struct RenderedArticle {
  std::string html;
  std::vector<OutlineEntry> outline;
  int readingTimeMinutes = 0;
  std::vector<std::string> contributors;  // user ids, first contribution first
};

struct RenderOptions {
  std::string language = "en";
  // Shown in the header, e.g. "Version 2" or "Head version".
  std::string versionLabel = "Head version";
  // Maps a user id to the name shown in the acknowledgements; ids otherwise.
  std::function<std::string(const std::string&)> displayName;
};

// Distinct users over the statements, ordered by their earliest
// (timestamp, statement id).
std::vector<std::string> acknowledgements(const std::vector<graph::Statement>& statements);
// Same over the article subgraph as traversed inside the view.
std::vector<std::string> acknowledgements(const graph::GraphView& view, const EntityId& articleId);

// ceil(words / 250) over natural-text sections.
int readingTimeMinutes(std::size_t words);
std::size_t articleWordCount(const graph::GraphView& view, const EntityId& articleId);

// Renders from a view holding the article subgraph plus its context
// statements (head capture or snapshot). UnknownArticle when the view holds no
// such article.
RenderedArticle renderArticle(const graph::GraphView& view, const EntityId& articleId,
                              const RenderOptions& options = {});

// The comparison as CSV: header row of paper titles, first column of property
// labels, values joined with "; ".
std::string comparisonCsv(const graph::GraphView& view, const EntityId& comparisonId);

}  // namespace smartreview::render
