#pragma once

// Random graphs and BGP queries plus an exhaustive evaluator to check the
// query engine against.

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "provenance.hpp"
#include "smartreview/graph/store.hpp"
#include "smartreview/graph/vocabulary.hpp"
#include "smartreview/rdf/uri.hpp"

namespace smartreview::oracle {

using graph::Entity;
using graph::EntityId;
using graph::EntityKind;
using graph::GraphState;
using graph::GraphView;
using graph::LiteralValue;
using testing::at;
namespace vocab = graph::vocab;

inline EntityId pred(std::string_view key) { return EntityId::predicate(std::string(key)); }
inline EntityId cls(std::string_view key) { return EntityId::klass(std::string(key)); }

struct RandomCase {
  GraphState state;
  std::vector<EntityId> pool;  // every entity a constant may name
};

inline void buildRandomGraph(RandomCase& c, std::mt19937& rng, int statements) {
  auto p = at("fixture", 0);
  std::vector<EntityId> subjects, predicates, objects;
  for (int i = 0; i < 5; ++i) {
    std::string key = "X" + std::to_string(i);
    subjects.push_back(c.state.createEntity({EntityKind::Resource, key, {}, {}, key}, p));
  }
  for (int i = 0; i < 3; ++i) {
    std::string key = "Q" + std::to_string(i);
    predicates.push_back(c.state.createEntity({EntityKind::Predicate, key, {}, {}, key}, p));
  }
  objects = subjects;
  for (const char* v : {"u", "v"}) {
    objects.push_back(c.state.createEntity(
        {EntityKind::Literal, "", {}, LiteralValue{v, "xsd:string"}, std::nullopt}, p));
  }
  objects.push_back(cls(vocab::kPaper));
  predicates.push_back(pred(vocab::kType));
  std::uniform_int_distribution<std::size_t> ps(0, subjects.size() - 1);
  std::uniform_int_distribution<std::size_t> pp(0, predicates.size() - 1);
  std::uniform_int_distribution<std::size_t> po(0, objects.size() - 1);
  for (int i = 0; i < statements; ++i) {
    const auto& pr = predicates[pp(rng)];
    EntityId o = objects[po(rng)];
    if (pr.key == vocab::kType) o = cls(vocab::kPaper);
    c.state.addStatement(subjects[ps(rng)], pr, o, p);
  }
  c.pool = subjects;
  c.pool.insert(c.pool.end(), predicates.begin(), predicates.end());
  c.pool.insert(c.pool.end(), objects.begin() + static_cast<long>(subjects.size()), objects.end());
}

inline std::string termText(const EntityId& id, const GraphView& view, const rdf::UriMapping& m) {
  if (id.kind == EntityKind::Literal) {
    const Entity* e = view.entity(id);
    std::string value = e && e->literal ? e->literal->value : "missing";
    return "\"" + value + "\"^^xsd:string";
  }
  return "<" + m.toUri(id) + ">";
}

struct RandomQuery {
  std::string text;
  std::vector<std::array<std::string, 3>> patterns;  // "?v" or constant text
  std::vector<std::string> projection;
  bool distinct;
};

inline RandomQuery randomQuery(std::mt19937& rng, const RandomCase& c, const GraphView& view) {
  rdf::UriMapping m;
  static const std::vector<std::string> vars = {"?a", "?b", "?c", "?d"};
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, c.pool.size() - 1);
  std::uniform_int_distribution<std::size_t> pickVar(0, vars.size() - 1);
  RandomQuery q;
  q.distinct = coin(rng) == 0;
  int n = count(rng);
  std::set<std::string> used;
  auto term = [&](bool objectPos, bool predicatePos) -> std::string {
    if (coin(rng) != 0) {
      auto v = vars[pickVar(rng)];
      used.insert(v);
      return v;
    }
    for (int attempt = 0; attempt < 20; ++attempt) {
      const auto& id = c.pool[pick(rng)];
      if (id.kind == EntityKind::Literal && !objectPos) continue;
      if (predicatePos && id.kind != EntityKind::Predicate && coin(rng) != 0) continue;
      return termText(id, view, m);
    }
    return "<http://orkg.org/orkg/resource/NOPE>";
  };
  // Half the patterns start from a real statement so joins have something to find.
  std::vector<graph::Triple> present;
  for (const auto& st : view.statements()) present.push_back(st.triple);
  auto anchored = [&](const EntityId& id) -> std::string {
    if (rng() % 2 == 0) return termText(id, view, m);
    auto v = vars[pickVar(rng)];
    used.insert(v);
    return v;
  };
  for (int i = 0; i < n; ++i) {
    if (!present.empty() && coin(rng) != 0) {
      const auto& t = present[rng() % present.size()];
      q.patterns.push_back({anchored(t.subject), anchored(t.predicate), anchored(t.object)});
    } else {
      q.patterns.push_back({term(false, false), term(false, true), term(true, false)});
    }
  }
  if (used.empty()) {
    q.patterns[0][0] = "?a";
    used.insert("?a");
  }
  for (const auto& v : used) {
    if (coin(rng) != 0 || q.projection.empty()) q.projection.push_back(v.substr(1));
  }
  q.text = std::string("SELECT ") + (q.distinct ? "DISTINCT " : "");
  for (const auto& v : q.projection) q.text += "?" + v + " ";
  q.text += "WHERE {";
  for (const auto& p : q.patterns) q.text += " " + p[0] + " " + p[1] + " " + p[2] + " .";
  q.text += " }";
  return q;
}

// Exhaustive oracle: every assignment of every variable to every entity of the
// view, kept when all patterns are statements of the view.
inline std::vector<std::vector<EntityId>> bruteForce(const RandomQuery& q, const GraphView& view) {
  rdf::UriMapping m;
  std::set<std::tuple<EntityId, EntityId, EntityId>> triples;
  for (const auto& s : view.statements()) {
    triples.emplace(s.triple.subject, s.triple.predicate, s.triple.object);
  }
  std::vector<EntityId> universe;
  for (const auto& [id, e] : view.entities()) universe.push_back(id);
  std::map<std::string, EntityId> constants;
  for (const auto& id : universe) constants[termText(id, view, m)] = id;

  std::vector<std::string> vars;
  for (const auto& p : q.patterns) {
    for (const auto& t : p) {
      if (t[0] == '?' && std::find(vars.begin(), vars.end(), t.substr(1)) == vars.end()) {
        vars.push_back(t.substr(1));
      }
    }
  }
  std::vector<std::vector<EntityId>> rows;
  if (universe.empty()) return rows;
  std::vector<std::size_t> choice(vars.size(), 0);
  while (true) {
    std::map<std::string, EntityId> assignment;
    for (std::size_t i = 0; i < vars.size(); ++i) assignment[vars[i]] = universe[choice[i]];
    bool ok = true;
    for (const auto& p : q.patterns) {
      EntityId ids[3];
      for (int k = 0; k < 3 && ok; ++k) {
        const auto& t = p[static_cast<std::size_t>(k)];
        if (t[0] == '?') {
          ids[k] = assignment[t.substr(1)];
        } else if (auto it = constants.find(t); it != constants.end()) {
          ids[k] = it->second;
        } else {
          ok = false;
        }
      }
      if (!ok || !triples.count({ids[0], ids[1], ids[2]})) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<EntityId> row;
      for (const auto& v : q.projection) row.push_back(assignment[v]);
      rows.push_back(row);
    }
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == universe.size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const EntityId& x, const EntityId& y) {
                                          return std::tie(x.key, x.kind) < std::tie(y.key, y.kind);
                                        });
  });
  if (q.distinct) rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

}  // namespace smartreview::oracle
