#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "smartreview/graph/entity.hpp"
#include "smartreview/graph/graph_view.hpp"
#include "smartreview/graph/statement_log.hpp"

namespace smartreview::graph {

struct EntitySpec {
  EntityKind kind = EntityKind::Resource;
  std::string label;
  std::vector<EntityId> classes;        // resources only
  std::optional<LiteralValue> literal;  // literals only
  std::optional<std::string> key;       // explicit key; auto-generated otherwise
  bool shared = false;
};

struct StatementFilter {
  std::optional<EntityId> subject;
  std::optional<EntityId> predicate;
  std::optional<EntityId> object;
};

// The unsynchronized graph: entities, head statements, full statement history
// and the event log. All validation lives here; Store adds locking and
// persistence on top.
class GraphState {
 public:
  GraphState();

  // Reads.
  const Entity* findEntity(const EntityId& id) const;
  bool hasEntity(const EntityId& id) const { return findEntity(id) != nullptr; }
  std::optional<EntityId> findLiteral(const LiteralValue& literal) const;
  const Statement* findStatement(StatementId id) const;   // head graph only
  const Statement* findHistorical(StatementId id) const;  // anything ever added
  std::vector<Statement> getStatements(const StatementFilter& filter = {}) const;
  std::vector<const Statement*> outgoing(const EntityId& subject) const;
  std::vector<Statement> traverseSubgraph(const EntityId& root) const;
  std::vector<Entity> suggestEntities(EntityKind kind, std::string_view labelQuery) const;
  bool isUserRegistered(std::string_view userId) const;
  std::size_t statementCount() const { return head_.size(); }
  const std::vector<LogEvent>& log() const { return log_; }

  // A view over the given statements with every referenced entity attached.
  GraphView view(std::vector<Statement> statements) const;
  GraphView headView() const;

  // Writes.
  EntityId createEntity(const EntitySpec& spec, const Provenance& provenance);
  Statement addStatement(const EntityId& subject, const EntityId& predicate, const EntityId& object,
                         const Provenance& provenance);
  Statement removeStatement(StatementId id, const Provenance& provenance);
  void registerUser(const std::string& userId);

  // Replays one log event without re-validating provenance.
  void apply(const LogEvent& event);

 private:
  EntityId insertEntity(Entity entity);
  std::string nextKey(EntityKind kind);
  void noteKey(const EntityId& id);
  std::string datatypeOf(const EntityId& object) const;

  std::map<EntityId, Entity> entities_;
  std::map<LiteralValue, EntityId> literals_;
  std::map<StatementId, Statement> head_;
  std::map<StatementId, Statement> history_;
  std::map<EntityId, std::set<StatementId>> bySubject_;
  std::set<std::string, std::less<>> users_;
  std::map<EntityKind, std::uint64_t> counters_;
  std::uint64_t nextStatement_ = 1;
  std::vector<LogEvent> log_;
};

// Thread-safe statement store. Mutations are serialized through write(); a
// failed batch is rolled back completely by replaying the log prefix, so each
// write() call is atomic. Reads run concurrently under a shared lock.
class Store {
 public:
  Store();
  // Opens (or creates) a log file and replays it.
  explicit Store(const std::filesystem::path& logFile);
  ~Store();

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  template <class F>
  auto read(F&& f) const {
    std::shared_lock lock(mutex_);
    return f(static_cast<const GraphState&>(state_));
  }

  template <class F>
  auto write(F&& f) {
    std::unique_lock lock(mutex_);
    std::size_t mark = state_.log().size();
    try {
      if constexpr (std::is_void_v<std::invoke_result_t<F, GraphState&>>) {
        f(state_);
        commit(mark);
      } else {
        auto result = f(state_);
        commit(mark);
        return result;
      }
    } catch (...) {
      rollback(mark);
      throw;
    }
  }

  // Single-operation conveniences; each is one batch.
  EntityId createEntity(const EntitySpec& spec, const Provenance& provenance);
  Statement addStatement(const EntityId& subject, const EntityId& predicate, const EntityId& object,
                         const Provenance& provenance);
  Statement removeStatement(StatementId id, const Provenance& provenance);
  void registerUser(const std::string& userId);

  std::vector<Statement> getStatements(const StatementFilter& filter = {}) const;
  std::vector<Statement> traverseSubgraph(const EntityId& root) const;
  std::vector<Entity> suggestEntities(EntityKind kind, std::string_view labelQuery) const;
  std::optional<Entity> entity(const EntityId& id) const;
  GraphView headView() const;
  std::size_t logSize() const;

  const std::optional<std::filesystem::path>& logFile() const { return logFile_; }

 private:
  void commit(std::size_t mark);
  void rollback(std::size_t mark);

  mutable std::shared_mutex mutex_;
  GraphState state_;
  std::optional<std::filesystem::path> logFile_;
  std::ofstream logStream_;
};

}  // namespace smartreview::graph
