#include "smartreview/graph/graph_view.hpp"

#include <algorithm>

#include "smartreview/graph/vocabulary.hpp"

namespace smartreview::graph {

GraphView::GraphView(std::vector<Statement> statements, std::map<EntityId, Entity> entities)
    : statements_(std::move(statements)), entities_(std::move(entities)) {
  std::sort(statements_.begin(), statements_.end(),
            [](const Statement& a, const Statement& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < statements_.size(); ++i) {
    const auto& t = statements_[i].triple;
    bySubject_[t.subject].push_back(i);
    byPredicate_[t.predicate].push_back(i);
    byObject_[t.object].push_back(i);
  }
  for (const auto& [id, entity] : entities_) {
    if (entity.literal) literals_.emplace(*entity.literal, id);
  }
}

const Entity* GraphView::entity(const EntityId& id) const {
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : &it->second;
}

std::string GraphView::label(const EntityId& id) const {
  const Entity* e = entity(id);
  if (!e) return id.key;
  if (e->literal) return e->literal->value;
  return e->label.empty() ? id.key : e->label;
}

std::optional<EntityId> GraphView::findLiteral(const LiteralValue& literal) const {
  auto it = literals_.find(literal);
  if (it == literals_.end()) return std::nullopt;
  return it->second;
}

std::vector<const Statement*> GraphView::match(const EntityId* subject, const EntityId* predicate,
                                               const EntityId* object) const {
  // Start from the narrowest index available, then filter.
  const std::vector<std::size_t>* candidates = nullptr;
  auto narrow = [&](const std::map<EntityId, std::vector<std::size_t>>& index,
                    const EntityId* key) -> bool {
    if (!key) return true;
    auto it = index.find(*key);
    if (it == index.end()) return false;
    if (!candidates || it->second.size() < candidates->size()) candidates = &it->second;
    return true;
  };
  if (!narrow(bySubject_, subject) || !narrow(byPredicate_, predicate) ||
      !narrow(byObject_, object)) {
    return {};
  }
  std::vector<const Statement*> out;
  auto accept = [&](const Statement& s) {
    if (subject && s.triple.subject != *subject) return;
    if (predicate && s.triple.predicate != *predicate) return;
    if (object && s.triple.object != *object) return;
    out.push_back(&s);
  };
  if (candidates) {
    for (std::size_t i : *candidates) accept(statements_[i]);
  } else {
    for (const auto& s : statements_) accept(s);
  }
  return out;
}

std::vector<const Statement*> GraphView::outgoing(const EntityId& subject) const {
  return match(&subject, nullptr, nullptr);
}

std::vector<EntityId> GraphView::objects(const EntityId& subject,
                                         std::string_view predicateKey) const {
  EntityId predicate = EntityId::predicate(std::string(predicateKey));
  std::vector<EntityId> out;
  for (const Statement* s : match(&subject, &predicate, nullptr)) out.push_back(s->object());
  return out;
}

std::optional<EntityId> GraphView::object(const EntityId& subject,
                                          std::string_view predicateKey) const {
  auto all = objects(subject, predicateKey);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<EntityId> GraphView::subjects(std::string_view predicateKey,
                                          const EntityId& object) const {
  EntityId predicate = EntityId::predicate(std::string(predicateKey));
  std::vector<EntityId> out;
  for (const Statement* s : match(nullptr, &predicate, &object)) out.push_back(s->subject());
  return out;
}

std::optional<std::string> GraphView::literalValue(const EntityId& subject,
                                                   std::string_view predicateKey) const {
  for (const EntityId& id : objects(subject, predicateKey)) {
    if (auto value = literalOf(id)) return value;
  }
  return std::nullopt;
}

std::optional<std::string> GraphView::literalOf(const EntityId& literal) const {
  if (literal.kind != EntityKind::Literal) return std::nullopt;
  const Entity* e = entity(literal);
  if (!e || !e->literal) return std::nullopt;
  return e->literal->value;
}

bool GraphView::hasClass(const EntityId& subject, std::string_view classKey) const {
  EntityId predicate = EntityId::predicate(std::string(vocab::kType));
  EntityId klass = EntityId::klass(std::string(classKey));
  return !match(&subject, &predicate, &klass).empty();
}

std::vector<EntityId> GraphView::classesOf(const EntityId& subject) const {
  return objects(subject, vocab::kType);
}

}  // namespace smartreview::graph

namespace smartreview::graph {

std::vector<Statement> traverseSubgraph(const GraphView& view, const EntityId& root) {
  return traverseFrom(
      root, [&](const EntityId& node) { return view.outgoing(node); },
      [&](const EntityId& node) {
        const Entity* e = view.entity(node);
        return e && e->shared;
      });
}

}  // namespace smartreview::graph
