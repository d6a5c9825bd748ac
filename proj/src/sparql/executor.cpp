#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"
#include "smartreview/error.hpp"
#include "smartreview/sparql/sparql.hpp"

namespace smartreview::sparql {

using graph::EntityId;
using graph::EntityKind;

namespace {

using Triple = std::tuple<EntityId, EntityId, EntityId>;

// A pattern position after resolving constants against the view.
struct Slot {
  int variable = -1;  // index into the variable table, or -1 for a constant
  EntityId constant;
};

struct ResolvedPattern {
  Slot s, p, o;
};

// Deduplicated triples with per-position indexes. A view can hold the same
// triple under several statement ids; BGP matching works on the triple set.
class TripleIndex {
 public:
  explicit TripleIndex(const graph::GraphView& view) {
    std::set<Triple> unique;
    for (const auto& st : view.statements()) {
      unique.emplace(st.triple.subject, st.triple.predicate, st.triple.object);
    }
    triples_.assign(unique.begin(), unique.end());
    for (std::size_t i = 0; i < triples_.size(); ++i) {
      bySubject_[std::get<0>(triples_[i])].push_back(i);
      byPredicate_[std::get<1>(triples_[i])].push_back(i);
      byObject_[std::get<2>(triples_[i])].push_back(i);
    }
  }

  const std::vector<Triple>& triples() const { return triples_; }

  // Candidate triple indexes given the bound positions (nullptr = free).
  const std::vector<std::size_t>* candidates(const EntityId* s, const EntityId* p,
                                             const EntityId* o) const {
    const std::vector<std::size_t>* best = &all();
    auto narrow = [&](const std::map<EntityId, std::vector<std::size_t>>& index,
                      const EntityId* key) {
      if (!key) return;
      auto it = index.find(*key);
      const auto* list = it == index.end() ? &empty_ : &it->second;
      if (list->size() < best->size()) best = list;
    };
    narrow(bySubject_, s);
    narrow(byPredicate_, p);
    narrow(byObject_, o);
    return best;
  }

 private:
  const std::vector<std::size_t>& all() const {
    if (all_.size() != triples_.size()) {
      all_.resize(triples_.size());
      for (std::size_t i = 0; i < all_.size(); ++i) all_[i] = i;
    }
    return all_;
  }

  std::vector<Triple> triples_;
  std::map<EntityId, std::vector<std::size_t>> bySubject_, byPredicate_, byObject_;
  mutable std::vector<std::size_t> all_;
  std::vector<std::size_t> empty_;
};

class Executor {
 public:
  Executor(const QueryPlan& plan, const graph::GraphView& view, const rdf::UriMapping& mapping)
      : plan_(plan), view_(view), mapping_(mapping), index_(view) {}

  SolutionTable run() {
    SolutionTable table;
    table.header = plan_.projection;
    if (!resolve()) return table;
    order();
    std::vector<std::optional<EntityId>> binding(variables_.size());
    std::vector<std::vector<EntityId>> rows;
    search(0, binding, rows);

    std::vector<std::size_t> projected;
    for (const auto& name : plan_.projection) {
      projected.push_back(static_cast<std::size_t>(
          std::find(variables_.begin(), variables_.end(), name) - variables_.begin()));
    }
    for (const auto& row : rows) {
      std::vector<EntityId> out;
      for (std::size_t i : projected) out.push_back(row[i]);
      table.rows.push_back(std::move(out));
    }
    auto byKey = [](const std::vector<EntityId>& a, const std::vector<EntityId>& b) {
      return std::lexicographical_compare(
          a.begin(), a.end(), b.begin(), b.end(), [](const EntityId& x, const EntityId& y) {
            return std::tie(x.key, x.kind) < std::tie(y.key, y.kind);
          });
    };
    std::sort(table.rows.begin(), table.rows.end(), byKey);
    if (plan_.distinct) {
      table.rows.erase(std::unique(table.rows.begin(), table.rows.end()), table.rows.end());
    }
    return table;
  }

 private:
  // Maps constants to entity ids; false when some constant cannot occur in the
  // view at all, which makes the whole pattern unsatisfiable.
  bool resolve() {
    bool satisfiable = true;
    auto slot = [&](const Term& term) {
      Slot s;
      if (const auto* v = std::get_if<Variable>(&term)) {
        auto it = std::find(variables_.begin(), variables_.end(), v->name);
        s.variable = static_cast<int>(it - variables_.begin());
        if (it == variables_.end()) variables_.push_back(v->name);
      } else if (const auto* iri = std::get_if<Iri>(&term)) {
        auto id = mapping_.fromUri(iri->iri);
        if (id) {
          s.constant = *id;
        } else {
          satisfiable = false;
        }
      } else {
        const auto& lit = std::get<Literal>(term);
        // Store literals always carry a datatype, so a plain literal never
        // matches.
        std::optional<EntityId> id;
        if (lit.datatype) {
          id = view_.findLiteral({lit.value, rdf::compactDatatype(*lit.datatype)});
        }
        if (id) {
          s.constant = *id;
        } else {
          satisfiable = false;
        }
      }
      return s;
    };
    for (const auto& p : plan_.patterns) {
      patterns_.push_back({slot(p.subject), slot(p.predicate), slot(p.object)});
    }
    return satisfiable;
  }

  // Greedy reordering: repeatedly take the pattern with the fewest candidate
  // triples given the variables bound so far, preferring connected patterns.
  void order() {
    std::vector<ResolvedPattern> remaining = patterns_;
    std::vector<ResolvedPattern> ordered;
    std::vector<bool> bound(variables_.size(), false);
    while (!remaining.empty()) {
      std::size_t best = 0;
      std::tuple<int, std::size_t> bestScore{4, SIZE_MAX};
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        const auto& p = remaining[i];
        int free = 0;
        auto constantOf = [&](const Slot& s) -> const EntityId* {
          if (s.variable < 0) return &s.constant;
          if (!bound[static_cast<std::size_t>(s.variable)]) ++free;
          return nullptr;
        };
        const EntityId* s = constantOf(p.s);
        const EntityId* pr = constantOf(p.p);
        const EntityId* o = constantOf(p.o);
        std::tuple<int, std::size_t> score{free, index_.candidates(s, pr, o)->size()};
        if (score < bestScore) {
          bestScore = score;
          best = i;
        }
      }
      for (const Slot* s : {&remaining[best].s, &remaining[best].p, &remaining[best].o}) {
        if (s->variable >= 0) bound[static_cast<std::size_t>(s->variable)] = true;
      }
      ordered.push_back(remaining[best]);
      remaining.erase(remaining.begin() + static_cast<long>(best));
    }
    patterns_ = std::move(ordered);
  }

  void search(std::size_t depth, std::vector<std::optional<EntityId>>& binding,
              std::vector<std::vector<EntityId>>& rows) {
    if (depth == patterns_.size()) {
      std::vector<EntityId> row;
      for (const auto& b : binding) row.push_back(*b);
      rows.push_back(std::move(row));
      return;
    }
    const auto& p = patterns_[depth];
    auto current = [&](const Slot& s) -> const EntityId* {
      if (s.variable < 0) return &s.constant;
      const auto& b = binding[static_cast<std::size_t>(s.variable)];
      return b ? &*b : nullptr;
    };
    const EntityId* s = current(p.s);
    const EntityId* pr = current(p.p);
    const EntityId* o = current(p.o);
    for (std::size_t i : *index_.candidates(s, pr, o)) {
      const auto& [ts, tp, to] = index_.triples()[i];
      std::vector<int> assigned;
      auto unify = [&](const Slot& slot, const EntityId* fixed, const EntityId& value) {
        if (fixed) return *fixed == value;
        auto& b = binding[static_cast<std::size_t>(slot.variable)];
        if (b) return *b == value;  // same variable twice in one pattern
        b = value;
        assigned.push_back(slot.variable);
        return true;
      };
      if (unify(p.s, s, ts) && unify(p.p, pr, tp) && unify(p.o, o, to)) {
        search(depth + 1, binding, rows);
      }
      for (int v : assigned) binding[static_cast<std::size_t>(v)].reset();
    }
  }

  const QueryPlan& plan_;
  const graph::GraphView& view_;
  const rdf::UriMapping& mapping_;
  TripleIndex index_;
  std::vector<std::string> variables_;
  std::vector<ResolvedPattern> patterns_;
};

std::string csvField(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

SolutionTable execute(const QueryPlan& plan, const graph::GraphView& view,
                      const rdf::UriMapping& mapping) {
  return Executor(plan, view, mapping).run();
}

std::string toCsv(const SolutionTable& table, const graph::GraphView& view,
                  const rdf::UriMapping& mapping) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) out += ',';
    out += csvField(table.header[i]);
  }
  out += "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      const auto& id = row[i];
      out += csvField(id.kind == EntityKind::Literal ? view.literalOf(id).value_or("")
                                                     : mapping.toUri(id));
    }
    out += "\r\n";
  }
  return out;
}

std::string toJson(const SolutionTable& table, const graph::GraphView& view,
                   const rdf::UriMapping& mapping) {
  nlohmann::json bindings = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json binding = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& id = row[i];
      if (id.kind == EntityKind::Literal) {
        const auto* entity = view.entity(id);
        nlohmann::json value = {{"type", "literal"}, {"value", view.literalOf(id).value_or("")}};
        if (entity && entity->literal) {
          value["datatype"] = rdf::expandDatatype(entity->literal->datatype);
        }
        binding[table.header[i]] = value;
      } else {
        binding[table.header[i]] = {{"type", "uri"}, {"value", mapping.toUri(id)}};
      }
    }
    bindings.push_back(binding);
  }
  nlohmann::json doc = {{"head", {{"vars", table.header}}}, {"results", {{"bindings", bindings}}}};
  return doc.dump(2);
}

}  // namespace smartreview::sparql
