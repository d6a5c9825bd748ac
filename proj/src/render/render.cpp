#include "smartreview/render/render.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"
#include "smartreview/article/document.hpp"
#include "smartreview/error.hpp"
#include "smartreview/graph/vocabulary.hpp"
#include "smartreview/markdown/markdown.hpp"

namespace smartreview::render {

using article::Article;
using article::Comparison;
using article::Section;
using graph::EntityKind;
using graph::GraphView;
using graph::Statement;
using json = nlohmann::json;
using markdown::escapeHtml;
namespace vocab = graph::vocab;

namespace {

constexpr int kWordsPerMinute = 250;

constexpr std::string_view kStyle =
    "body{font-family:system-ui,sans-serif;line-height:1.5;margin:0 auto;max-width:52rem;"
    "padding:1rem;color:#1b1b1b}"
    "table{border-collapse:collapse;display:block;overflow-x:auto;max-width:100%}"
    "th,td{border:1px solid #999;padding:.25rem .5rem;text-align:left;vertical-align:top}"
    "nav ol{padding-left:1.25rem}.meta{color:#555}"
    ".citation.unresolved{color:#a00}"
    "@media (max-width:40rem){body{padding:.5rem}}";

std::string attr(std::string_view text) { return escapeHtml(text); }

std::string anchorFor(const EntityId& id) { return "section-" + id.key; }

std::string valueText(const GraphView& view, const EntityId& value) {
  if (value.kind == EntityKind::Literal) return view.literalOf(value).value_or(value.key);
  return view.label(value);
}

// Resolved citation keys in global first-appearance order.
struct Citations {
  std::vector<std::string> ordered;  // resolved keys only
  std::map<std::string, int> numbers;

  markdown::CitationResolver resolver() const {
    return [this](std::string_view key) -> std::optional<markdown::CitationTarget> {
      auto it = numbers.find(std::string(key));
      if (it == numbers.end()) return std::nullopt;
      return markdown::CitationTarget{it->second};
    };
  }
};

Citations collectCitations(const GraphView& view, const Article& a) {
  std::vector<std::string> all;
  for (const auto& s : a.sections) {
    if (const auto* t = std::get_if<article::NaturalText>(&s.body)) {
      markdown::extractCitations(markdown::parse(t->markdown), all);
    }
  }
  Citations c;
  for (const auto& key : all) {
    if (view.hasClass(EntityId::resource(key), vocab::kPaper)) {
      c.ordered.push_back(key);
      c.numbers[key] = static_cast<int>(c.ordered.size());
    }
  }
  return c;
}

std::string defaultHeading(const GraphView& view, const Section& s) {
  if (!s.heading.empty()) return s.heading;
  if (const auto* t = std::get_if<article::NaturalText>(&s.body)) return t->deoType;
  if (const auto* c = std::get_if<article::ComparisonRef>(&s.body))
    return view.label(c->comparison);
  if (const auto* v = std::get_if<article::VisualizationRef>(&s.body)) {
    return view.label(v->visualization);
  }
  if (std::holds_alternative<article::OntologyTable>(s.body)) return "Ontology";
  return std::get<article::EntityTable>(s.body).kind == article::EntityTableKind::Resources
             ? "Resources"
             : "Properties";
}

std::string paperTitle(const GraphView& view, const EntityId& paper) {
  return view.literalValue(paper, vocab::kTitle).value_or(view.label(paper));
}

std::string cellText(const GraphView& view, const Comparison& c, const EntityId& contribution,
                     const EntityId& property) {
  auto it = c.cells.find({contribution, property});
  if (it == c.cells.end()) return "";
  std::string out;
  for (const auto& v : it->second) {
    if (!out.empty()) out += "; ";
    out += valueText(view, v);
  }
  return out;
}

void comparisonTable(const GraphView& view, const Comparison& c, std::string& out) {
  out += "<figure class=\"comparison-figure\">\n<table class=\"comparison\" id=\"comparison-" +
         attr(c.id.key) + "\">\n<caption>" + escapeHtml(c.label) + "</caption>\n";
  out += "<thead>\n<tr><th scope=\"col\">Property</th>";
  for (const auto& col : c.columns) {
    out += "<th scope=\"col\">" + escapeHtml(paperTitle(view, col.paper)) + "</th>";
  }
  out += "</tr>\n</thead>\n<tbody>\n";
  for (const auto& property : c.rows) {
    out += "<tr><th scope=\"row\">" + escapeHtml(view.label(property)) + "</th>";
    for (const auto& col : c.columns) {
      out += "<td>";
      auto it = c.cells.find({col.contribution, property});
      if (it != c.cells.end()) {
        for (std::size_t i = 0; i < it->second.size(); ++i) {
          if (i > 0) out += "; ";
          const auto& v = it->second[i];
          if (v.kind == EntityKind::Literal) {
            out += escapeHtml(valueText(view, v));
          } else {
            out += "<span class=\"resource\" data-id=\"" + attr(v.key) + "\">" +
                   escapeHtml(view.label(v)) + "</span>";
          }
        }
      }
      out += "</td>";
    }
    out += "</tr>\n";
  }
  out += "</tbody>\n</table>\n</figure>\n";
}

std::string chartAltText(const article::Visualization& v, const Comparison& c,
                         const GraphView& view) {
  std::string kind = v.chartKind == article::ChartKind::BarChart    ? "Bar chart"
                     : v.chartKind == article::ChartKind::LineChart ? "Line chart"
                                                                    : "Table";
  std::string label = v.label.empty() ? c.label : v.label;
  return kind + ": " + label + " (" + view.label(v.seriesProperty) + " for " +
         std::to_string(c.columns.size()) + " papers)";
}

void visualizationBlock(const GraphView& view, const EntityId& id, std::string& out) {
  auto v = article::readVisualization(view, id);
  auto c = article::readComparison(view, v.comparison);
  std::string alt = chartAltText(v, c, view);

  json spec;
  spec["chart"] = std::string(article::chartKindName(v.chartKind));
  spec["label"] = v.label;
  spec["comparison"] = c.id.key;
  spec["series"] = {{"property", v.seriesProperty.key}, {"label", view.label(v.seriesProperty)}};
  spec["data"] = json::array();
  for (const auto& col : c.columns) {
    spec["data"].push_back({{"paper", paperTitle(view, col.paper)},
                            {"value", cellText(view, c, col.contribution, v.seriesProperty)}});
  }
  std::string specText = spec.dump();
  // Keep the block inert inside <script>.
  for (std::size_t pos = 0; (pos = specText.find("</", pos)) != std::string::npos; pos += 3) {
    specText.replace(pos, 2, "<\\/");
  }

  out += "<figure class=\"visualization\" id=\"visualization-" + attr(id.key) + "\">\n";
  out += "<div class=\"chart\" role=\"img\" aria-label=\"" + attr(alt) + "\" data-chart=\"" +
         attr(article::chartKindName(v.chartKind)) + "\"></div>\n";
  out +=
      "<table class=\"visualization-data\">\n<thead>\n<tr><th scope=\"col\">Paper</th>"
      "<th scope=\"col\">" +
      escapeHtml(view.label(v.seriesProperty)) + "</th></tr>\n</thead>\n<tbody>\n";
  for (const auto& col : c.columns) {
    out += "<tr><th scope=\"row\">" + escapeHtml(paperTitle(view, col.paper)) + "</th><td>" +
           escapeHtml(cellText(view, c, col.contribution, v.seriesProperty)) + "</td></tr>\n";
  }
  out += "</tbody>\n</table>\n";
  out += "<script type=\"application/vnd.smartreview.chart+json\">" + specText + "</script>\n";
  out += "<figcaption>" + escapeHtml(v.label.empty() ? c.label : v.label) + "</figcaption>\n";
  out += "</figure>\n";
}

void entityRowsTable(const std::vector<article::OntologyRow>& rows, std::string_view cls,
                     std::string& out) {
  out += "<table class=\"" + std::string(cls) +
         "\">\n<thead>\n<tr><th scope=\"col\">Label</th>"
         "<th scope=\"col\">Description</th><th scope=\"col\">Ontology link</th></tr>\n"
         "</thead>\n<tbody>\n";
  for (const auto& row : rows) {
    out += "<tr><th scope=\"row\">" + escapeHtml(row.label) + "</th><td>" +
           escapeHtml(row.description) + "</td><td>";
    if (row.externalUri) {
      out += "<a href=\"" + attr(*row.externalUri) + "\">" + escapeHtml(*row.externalUri) + "</a>";
    }
    out += "</td></tr>\n";
  }
  out += "</tbody>\n</table>\n";
}

std::vector<EntityId> tableEntities(const GraphView& view, const Article& a,
                                    const article::EntityTable& t) {
  if (!t.entities.empty()) return t.entities;
  auto used = article::collectUsedEntities(view, a.id);
  return t.kind == article::EntityTableKind::Resources ? used.resources : used.properties;
}

std::string referenceText(const article::Paper& p) {
  std::string authors;
  for (std::size_t i = 0; i < p.authors.size(); ++i) {
    if (i > 0) authors += i + 1 == p.authors.size() ? " and " : ", ";
    authors += p.authors[i];
  }
  std::string out;
  if (!authors.empty()) out += escapeHtml(authors) + " ";
  if (!p.publicationDate.empty()) out += "(" + escapeHtml(p.publicationDate) + "). ";
  out += "<cite>" + escapeHtml(p.title) + "</cite>.";
  return out;
}

}  // namespace

std::vector<std::string> acknowledgements(const std::vector<Statement>& statements) {
  std::vector<const Statement*> sorted;
  for (const auto& s : statements) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](const Statement* a, const Statement* b) {
    return std::tie(a->provenance.timestamp, a->id) < std::tie(b->provenance.timestamp, b->id);
  });
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto* s : sorted) {
    if (seen.insert(s->provenance.userId).second) out.push_back(s->provenance.userId);
  }
  return out;
}

std::vector<std::string> acknowledgements(const GraphView& view, const EntityId& articleId) {
  return acknowledgements(graph::traverseSubgraph(view, articleId));
}

int readingTimeMinutes(std::size_t words) {
  return static_cast<int>((words + kWordsPerMinute - 1) / kWordsPerMinute);
}

std::size_t articleWordCount(const GraphView& view, const EntityId& articleId) {
  std::size_t words = 0;
  for (const auto& s : article::readArticle(view, articleId).sections) {
    if (const auto* t = std::get_if<article::NaturalText>(&s.body)) {
      words += markdown::wordCount(markdown::parse(t->markdown));
    }
  }
  return words;
}

std::string comparisonCsv(const GraphView& view, const EntityId& comparisonId) {
  auto c = article::readComparison(view, comparisonId);
  std::string out = "Property";
  for (const auto& col : c.columns) out += "," + article::csvField(paperTitle(view, col.paper));
  out += "\r\n";
  for (const auto& property : c.rows) {
    out += article::csvField(view.label(property));
    for (const auto& col : c.columns) {
      out += "," + article::csvField(cellText(view, c, col.contribution, property));
    }
    out += "\r\n";
  }
  return out;
}

RenderedArticle renderArticle(const GraphView& view, const EntityId& articleId,
                              const RenderOptions& options) {
  Article a = article::readArticle(view, articleId);
  RenderedArticle result;
  result.contributors = acknowledgements(view, articleId);
  result.readingTimeMinutes = readingTimeMinutes(articleWordCount(view, articleId));
  Citations citations = collectCitations(view, a);
  auto name = [&](const std::string& user) {
    return options.displayName ? options.displayName(user) : user;
  };

  for (const auto& s : a.sections) {
    result.outline.push_back({defaultHeading(view, s), anchorFor(s.id), 2});
  }
  result.outline.push_back({"References", "references", 2});
  result.outline.push_back({"Acknowledgements", "acknowledgements", 2});

  json meta;
  meta["@context"] = "https://schema.org";
  meta["@type"] = "ScholarlyArticle";
  meta["identifier"] = a.id.key;
  meta["headline"] = a.title;
  meta["about"] = view.label(a.researchField);
  meta["inLanguage"] = options.language;
  meta["timeRequired"] = "PT" + std::to_string(result.readingTimeMinutes) + "M";
  meta["contributor"] = json::array();
  for (const auto& u : result.contributors) {
    meta["contributor"].push_back({{"@type", "Person"}, {"name", name(u)}});
  }
  meta["citation"] = json::array();
  for (const auto& key : citations.ordered) {
    meta["citation"].push_back(paperTitle(view, EntityId::resource(key)));
  }
  std::string metaText = meta.dump();
  for (std::size_t pos = 0; (pos = metaText.find("</", pos)) != std::string::npos; pos += 3) {
    metaText.replace(pos, 2, "<\\/");
  }

  std::string& out = result.html;
  out += "<!DOCTYPE html>\n<html lang=\"" + attr(options.language) + "\">\n<head>\n";
  out += "<meta charset=\"utf-8\" />\n";
  out += "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\" />\n";
  out += "<title>" + escapeHtml(a.title) + "</title>\n";
  out += "<style>" + std::string(kStyle) + "</style>\n";
  out += "<script type=\"application/ld+json\">" + metaText + "</script>\n";
  out += "</head>\n<body>\n<header>\n<h1>" + escapeHtml(a.title) + "</h1>\n";
  out += "<p class=\"meta\">Research field: " + escapeHtml(view.label(a.researchField)) +
         " | Reading time: " + std::to_string(result.readingTimeMinutes) + " min | " +
         escapeHtml(options.versionLabel) + "</p>\n</header>\n";

  out +=
      "<nav aria-labelledby=\"outline-heading\">\n<h2 id=\"outline-heading\">Contents</h2>\n<ol>\n";
  for (const auto& entry : result.outline) {
    out +=
        "<li><a href=\"#" + attr(entry.anchor) + "\">" + escapeHtml(entry.heading) + "</a></li>\n";
  }
  out += "</ol>\n</nav>\n<main>\n<article>\n";

  markdown::HtmlOptions md;
  md.headingOffset = 2;
  md.enclosingLevel = 2;
  auto resolver = citations.resolver();
  for (const auto& s : a.sections) {
    std::string anchor = anchorFor(s.id);
    out += "<section id=\"" + attr(anchor) + "\" aria-labelledby=\"" + attr(anchor) + "-h\"";
    if (const auto* t = std::get_if<article::NaturalText>(&s.body)) {
      out += " data-type=\"" + attr(t->deoType) + "\"";
    }
    out +=
        ">\n<h2 id=\"" + attr(anchor) + "-h\">" + escapeHtml(defaultHeading(view, s)) + "</h2>\n";
    if (const auto* t = std::get_if<article::NaturalText>(&s.body)) {
      out += markdown::emitHtml(markdown::parse(t->markdown), resolver, md);
    } else if (const auto* c = std::get_if<article::ComparisonRef>(&s.body)) {
      comparisonTable(view, article::readComparison(view, c->comparison), out);
    } else if (const auto* v = std::get_if<article::VisualizationRef>(&s.body)) {
      visualizationBlock(view, v->visualization, out);
    } else if (const auto* o = std::get_if<article::OntologyTable>(&s.body)) {
      entityRowsTable(article::ontologyRows(view, o->entities), "ontology", out);
    } else {
      const auto& t = std::get<article::EntityTable>(s.body);
      entityRowsTable(article::ontologyRows(view, tableEntities(view, a, t)),
                      t.kind == article::EntityTableKind::Resources ? "entities resources"
                                                                    : "entities properties",
                      out);
    }
    out += "</section>\n";
  }

  out +=
      "<section id=\"references\" role=\"doc-bibliography\" aria-labelledby=\"references-h\">\n"
      "<h2 id=\"references-h\">References</h2>\n<ol class=\"references\">\n";
  for (const auto& key : citations.ordered) {
    auto paper = article::readPaper(view, EntityId::resource(key));
    out += "<li id=\"ref-" + attr(key) + "\">" + referenceText(paper) + "</li>\n";
  }
  out += "</ol>\n</section>\n";

  out +=
      "<section id=\"acknowledgements\" role=\"doc-acknowledgments\" "
      "aria-labelledby=\"acknowledgements-h\">\n"
      "<h2 id=\"acknowledgements-h\">Acknowledgements</h2>\n"
      "<p>This article was written collaboratively. Contributors, in order of their first "
      "contribution:</p>\n<ul class=\"contributors\">\n";
  for (const auto& u : result.contributors) out += "<li>" + escapeHtml(name(u)) + "</li>\n";
  out += "</ul>\n</section>\n";

  out += "</article>\n</main>\n<footer>\n<p>Article " + escapeHtml(a.id.key) +
         ". Machine-readable data: <a href=\"rdf\">RDF</a>.</p>\n</footer>\n</body>\n</html>\n";
  return result;
}

}  // namespace smartreview::render
