#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smartreview/graph/entity.hpp"

namespace smartreview::graph {

// An immutable, self-contained set of statements together with every entity
// they reference. Snapshots, article subgraphs and the full head graph are all
// handed around as views, so readers never hold the store lock.
class GraphView {
 public:
  GraphView() = default;
  GraphView(std::vector<Statement> statements, std::map<EntityId, Entity> entities);

  // Sorted by statement id.
  std::span<const Statement> statements() const { return statements_; }
  const std::map<EntityId, Entity>& entities() const { return entities_; }
  bool empty() const { return statements_.empty(); }

  const Entity* entity(const EntityId& id) const;
  // Label, or the key when the entity is unknown or unlabeled.
  std::string label(const EntityId& id) const;
  std::optional<EntityId> findLiteral(const LiteralValue& literal) const;

  // Statements matching every supplied filter, in statement-id order.
  std::vector<const Statement*> match(const EntityId* subject, const EntityId* predicate,
                                      const EntityId* object) const;
  std::vector<const Statement*> outgoing(const EntityId& subject) const;

  std::vector<EntityId> objects(const EntityId& subject, std::string_view predicateKey) const;
  std::optional<EntityId> object(const EntityId& subject, std::string_view predicateKey) const;
  std::vector<EntityId> subjects(std::string_view predicateKey, const EntityId& object) const;
  // Value of the first literal object for the predicate, if any.
  std::optional<std::string> literalValue(const EntityId& subject,
                                          std::string_view predicateKey) const;
  std::optional<std::string> literalOf(const EntityId& literal) const;
  bool hasClass(const EntityId& subject, std::string_view classKey) const;
  std::vector<EntityId> classesOf(const EntityId& subject) const;

 private:
  std::vector<Statement> statements_;
  std::map<EntityId, Entity> entities_;
  std::map<LiteralValue, EntityId> literals_;
  std::map<EntityId, std::vector<std::size_t>> bySubject_;
  std::map<EntityId, std::vector<std::size_t>> byPredicate_;
  std::map<EntityId, std::vector<std::size_t>> byObject_;
};

// Breadth-first closure over outgoing statements. Predicates, classes,
// literals and shared vocabulary are referenced but never expanded; the root is
// always expanded. Returns statements sorted by id.
template <class OutgoingFn, class SharedFn>
std::vector<Statement> traverseFrom(const EntityId& root, OutgoingFn&& outgoing,
                                    SharedFn&& isShared);

// The same closure evaluated inside a view (snapshots, exported graphs).
std::vector<Statement> traverseSubgraph(const GraphView& view, const EntityId& root);

}  // namespace smartreview::graph

#include "smartreview/graph/traversal_impl.hpp"
