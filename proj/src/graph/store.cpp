#include "smartreview/graph/store.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "smartreview/error.hpp"
#include "smartreview/graph/vocabulary.hpp"

namespace smartreview::graph {

namespace {

constexpr std::uint64_t kFirstGeneratedKey = 100000;
constexpr std::size_t kMaxSuggestions = 10;

std::string lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

[[noreturn]] void unknownEntity(const EntityId& id) {
  throw Error(ErrorCode::UnknownEntity, "unknown entity " + toString(id));
}

}  // namespace

GraphState::GraphState() {
  for (const auto& entry : vocab::wellKnown()) {
    Entity entity;
    entity.id = EntityId{entry.kind, std::string(entry.key)};
    entity.label = std::string(entry.label);
    entity.shared = true;
    insertEntity(std::move(entity));
  }
  for (std::string_view deo : vocab::deoClasses()) {
    Entity entity;
    entity.id = EntityId::klass(std::string(deo));
    entity.label = std::string(deo);
    entity.shared = true;
    insertEntity(std::move(entity));
  }
  for (auto user : {vocab::kSystemUser, vocab::kImportUser, vocab::kFixtureUser, vocab::kCliUser}) {
    users_.emplace(user);
  }
}

const Entity* GraphState::findEntity(const EntityId& id) const {
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : &it->second;
}

std::optional<EntityId> GraphState::findLiteral(const LiteralValue& literal) const {
  auto it = literals_.find(literal);
  if (it == literals_.end()) return std::nullopt;
  return it->second;
}

const Statement* GraphState::findStatement(StatementId id) const {
  auto it = head_.find(id);
  return it == head_.end() ? nullptr : &it->second;
}

const Statement* GraphState::findHistorical(StatementId id) const {
  auto it = history_.find(id);
  return it == history_.end() ? nullptr : &it->second;
}

std::vector<Statement> GraphState::getStatements(const StatementFilter& filter) const {
  std::vector<Statement> out;
  auto accept = [&](const Statement& s) {
    if (filter.predicate && s.predicate() != *filter.predicate) return;
    if (filter.object && s.object() != *filter.object) return;
    if (filter.subject && s.subject() != *filter.subject) return;
    out.push_back(s);
  };
  if (filter.subject) {
    auto it = bySubject_.find(*filter.subject);
    if (it == bySubject_.end()) return out;
    for (StatementId id : it->second) accept(head_.at(id));
  } else {
    for (const auto& [id, s] : head_) accept(s);
  }
  return out;
}

std::vector<const Statement*> GraphState::outgoing(const EntityId& subject) const {
  std::vector<const Statement*> out;
  auto it = bySubject_.find(subject);
  if (it == bySubject_.end()) return out;
  for (StatementId id : it->second) out.push_back(&head_.at(id));
  return out;
}

std::vector<Statement> GraphState::traverseSubgraph(const EntityId& root) const {
  if (!hasEntity(root)) unknownEntity(root);
  return traverseFrom(
      root, [this](const EntityId& node) { return outgoing(node); },
      [this](const EntityId& node) {
        const Entity* e = findEntity(node);
        return e && e->shared;
      });
}

std::vector<Entity> GraphState::suggestEntities(EntityKind kind,
                                                std::string_view labelQuery) const {
  if (labelQuery.empty()) return {};
  const std::string needle = lower(labelQuery);
  struct Ranked {
    int rank;
    const Entity* entity;
  };
  std::vector<Ranked> ranked;
  for (const auto& [id, entity] : entities_) {
    if (id.kind != kind) continue;
    std::string label = lower(entity.literal ? entity.literal->value : entity.label);
    auto pos = label.find(needle);
    if (pos == std::string::npos) continue;
    int rank = label == needle ? 0 : pos == 0 ? 1 : 2;
    ranked.push_back({rank, &entity});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.entity->id.key < b.entity->id.key;
  });
  std::vector<Entity> out;
  for (const auto& r : ranked) {
    if (out.size() == kMaxSuggestions) break;
    out.push_back(*r.entity);
  }
  return out;
}

bool GraphState::isUserRegistered(std::string_view userId) const {
  return users_.find(userId) != users_.end();
}

GraphView GraphState::view(std::vector<Statement> statements) const {
  std::map<EntityId, Entity> referenced;
  auto attach = [&](const EntityId& id) {
    if (referenced.count(id)) return;
    if (const Entity* e = findEntity(id)) referenced.emplace(id, *e);
  };
  for (const auto& s : statements) {
    attach(s.subject());
    attach(s.predicate());
    attach(s.object());
  }
  return GraphView(std::move(statements), std::move(referenced));
}

GraphView GraphState::headView() const { return view(getStatements()); }

EntityId GraphState::createEntity(const EntitySpec& spec, const Provenance& provenance) {
  const bool isLiteral = spec.kind == EntityKind::Literal;
  if (isLiteral != spec.literal.has_value()) {
    throw Error(ErrorCode::InvalidKind, isLiteral ? "literal entity requires a value"
                                                  : "literal value given for a non-literal");
  }
  if (!spec.classes.empty() && spec.kind != EntityKind::Resource) {
    throw Error(ErrorCode::InvalidKind, "only resources carry classes");
  }
  if (!isLiteral && spec.label.empty()) {
    throw Error(ErrorCode::InvalidArgument, "entity label must not be empty");
  }
  if (isLiteral && spec.literal->datatype.empty()) {
    throw Error(ErrorCode::InvalidArgument, "literal datatype must not be empty");
  }
  for (const auto& klass : spec.classes) {
    if (klass.kind != EntityKind::Class) {
      throw Error(ErrorCode::InvalidKind, toString(klass) + " is not a class");
    }
    if (!hasEntity(klass)) unknownEntity(klass);
  }
  if (!spec.classes.empty() && !isUserRegistered(provenance.userId)) {
    throw Error(ErrorCode::UnregisteredUser, "unregistered user " + provenance.userId);
  }
  // Literals are interned: one entity per (value, datatype).
  if (isLiteral) {
    if (auto existing = findLiteral(*spec.literal)) {
      if (spec.key && *spec.key != existing->key) {
        throw Error(ErrorCode::DuplicateKey, "literal already interned as " + existing->key);
      }
      return *existing;
    }
  }
  Entity entity;
  if (spec.key) {
    if (!isValidKey(*spec.key)) {
      throw Error(ErrorCode::InvalidArgument, "invalid key '" + *spec.key + "'");
    }
    entity.id = EntityId{spec.kind, *spec.key};
    if (hasEntity(entity.id)) {
      throw Error(ErrorCode::DuplicateKey, "key already taken: " + toString(entity.id));
    }
  } else {
    entity.id = EntityId{spec.kind, nextKey(spec.kind)};
  }
  entity.label = spec.label;
  entity.literal = spec.literal;
  entity.shared = spec.shared;
  EntityId id = insertEntity(entity);
  log_.push_back(EntityCreated{std::move(entity)});
  for (const auto& klass : spec.classes) {
    addStatement(id, EntityId::predicate(std::string(vocab::kType)), klass, provenance);
  }
  return id;
}

Statement GraphState::addStatement(const EntityId& subject, const EntityId& predicate,
                                   const EntityId& object, const Provenance& provenance) {
  if (!hasEntity(subject)) unknownEntity(subject);
  if (!hasEntity(predicate)) unknownEntity(predicate);
  if (!hasEntity(object)) unknownEntity(object);
  if (subject.kind == EntityKind::Literal) {
    throw Error(ErrorCode::InvalidSubjectKind, "literal " + subject.key + " cannot be a subject");
  }
  if (predicate.kind != EntityKind::Predicate) {
    throw Error(ErrorCode::InvalidKind, toString(predicate) + " is not a predicate");
  }
  if (predicate.key == vocab::kType && object.kind != EntityKind::Class) {
    throw Error(ErrorCode::InvalidKind, "class membership requires a class object");
  }
  if (provenance.userId.empty() || !isUserRegistered(provenance.userId)) {
    throw Error(ErrorCode::UnregisteredUser, "unregistered user '" + provenance.userId + "'");
  }
  Statement s{StatementId{nextStatement_++}, Triple{subject, predicate, object}, provenance};
  head_.emplace(s.id, s);
  history_.emplace(s.id, s);
  bySubject_[subject].insert(s.id);
  log_.push_back(StatementAdded{s, datatypeOf(object)});
  return s;
}

Statement GraphState::removeStatement(StatementId id, const Provenance& provenance) {
  auto it = head_.find(id);
  if (it == head_.end()) {
    throw Error(ErrorCode::UnknownStatement, "unknown statement " + toString(id));
  }
  if (provenance.userId.empty() || !isUserRegistered(provenance.userId)) {
    throw Error(ErrorCode::UnregisteredUser, "unregistered user '" + provenance.userId + "'");
  }
  Statement removed = it->second;
  head_.erase(it);
  auto& index = bySubject_[removed.subject()];
  index.erase(id);
  if (index.empty()) bySubject_.erase(removed.subject());
  log_.push_back(StatementRemoved{removed, provenance, datatypeOf(removed.object())});
  return removed;
}

void GraphState::registerUser(const std::string& userId) {
  if (!isValidKey(userId)) throw Error(ErrorCode::InvalidName, "invalid user id");
  if (!users_.insert(userId).second) return;
  log_.push_back(UserRegistered{userId});
}

void GraphState::apply(const LogEvent& event) {
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, UserRegistered>) {
          users_.insert(e.userId);
        } else if constexpr (std::is_same_v<T, EntityCreated>) {
          if (hasEntity(e.entity.id)) {
            throw Error(ErrorCode::ParseError,
                        "replayed duplicate entity " + toString(e.entity.id));
          }
          insertEntity(e.entity);
          noteKey(e.entity.id);
        } else if constexpr (std::is_same_v<T, StatementAdded>) {
          const Statement& s = e.statement;
          if (!hasEntity(s.subject()) || !hasEntity(s.predicate()) || !hasEntity(s.object()) ||
              history_.count(s.id)) {
            throw Error(ErrorCode::ParseError,
                        "replayed statement " + toString(s.id) + " references unknown state");
          }
          head_.emplace(s.id, s);
          history_.emplace(s.id, s);
          bySubject_[s.subject()].insert(s.id);
          nextStatement_ = std::max(nextStatement_, s.id.value + 1);
        } else {
          auto it = head_.find(e.statement.id);
          if (it == head_.end()) {
            throw Error(ErrorCode::ParseError,
                        "replayed removal of absent statement " + toString(e.statement.id));
          }
          StatementRemoved record{it->second, e.removal, e.objectDatatype};
          auto& index = bySubject_[it->second.subject()];
          index.erase(it->first);
          if (index.empty()) bySubject_.erase(it->second.subject());
          head_.erase(it);
          log_.push_back(std::move(record));
          return;
        }
        log_.push_back(event);
      },
      event);
}

EntityId GraphState::insertEntity(Entity entity) {
  EntityId id = entity.id;
  if (entity.literal) literals_.emplace(*entity.literal, id);
  entities_.emplace(id, std::move(entity));
  return id;
}

std::string GraphState::nextKey(EntityKind kind) {
  auto& counter = counters_[kind];
  if (counter < kFirstGeneratedKey) counter = kFirstGeneratedKey;
  while (true) {
    std::string key = std::string(1, kindCode(kind)) + std::to_string(counter++);
    if (!hasEntity(EntityId{kind, key})) return key;
  }
}

void GraphState::noteKey(const EntityId& id) {
  // Keep the generator ahead of any replayed or explicit key in its range.
  if (id.key.size() < 2 || id.key[0] != kindCode(id.kind)) return;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(id.key.data() + 1, id.key.data() + id.key.size(), value);
  if (ec != std::errc() || ptr != id.key.data() + id.key.size()) return;
  auto& counter = counters_[id.kind];
  if (value >= counter) counter = value + 1;
}

std::string GraphState::datatypeOf(const EntityId& object) const {
  if (object.kind != EntityKind::Literal) return {};
  const Entity* e = findEntity(object);
  return e && e->literal ? e->literal->datatype : std::string();
}

// ---------------------------------------------------------------------------

Store::Store() = default;

Store::Store(const std::filesystem::path& logFile) : logFile_(logFile) {
  if (logFile.has_parent_path()) std::filesystem::create_directories(logFile.parent_path());
  {
    std::ifstream in(logFile);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.empty()) continue;
      try {
        state_.apply(parseLogLine(line));
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError,
                    logFile.string() + ":" + std::to_string(number) + ": " + e.what());
      }
    }
  }
  logStream_.open(logFile, std::ios::app | std::ios::binary);
  if (!logStream_) {
    throw Error(ErrorCode::IoError, "cannot open store log " + logFile.string());
  }
}

Store::~Store() = default;

void Store::commit(std::size_t mark) {
  if (!logFile_) return;
  const auto& log = state_.log();
  if (log.size() == mark) return;
  std::string chunk;
  for (std::size_t i = mark; i < log.size(); ++i) {
    chunk += formatLogLine(log[i]);
    chunk.push_back('\n');
  }
  auto before = std::filesystem::file_size(*logFile_);
  logStream_.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
  logStream_.flush();
  if (!logStream_) {
    logStream_.clear();
    std::error_code ignored;
    std::filesystem::resize_file(*logFile_, before, ignored);
    throw Error(ErrorCode::IoError, "failed to append to store log " + logFile_->string());
  }
}

void Store::rollback(std::size_t mark) {
  GraphState fresh;
  const auto& log = state_.log();
  for (std::size_t i = 0; i < mark; ++i) fresh.apply(log[i]);
  state_ = std::move(fresh);
}

EntityId Store::createEntity(const EntitySpec& spec, const Provenance& provenance) {
  return write([&](GraphState& g) { return g.createEntity(spec, provenance); });
}

Statement Store::addStatement(const EntityId& subject, const EntityId& predicate,
                              const EntityId& object, const Provenance& provenance) {
  return write(
      [&](GraphState& g) { return g.addStatement(subject, predicate, object, provenance); });
}

Statement Store::removeStatement(StatementId id, const Provenance& provenance) {
  return write([&](GraphState& g) { return g.removeStatement(id, provenance); });
}

void Store::registerUser(const std::string& userId) {
  write([&](GraphState& g) { g.registerUser(userId); });
}

std::vector<Statement> Store::getStatements(const StatementFilter& filter) const {
  return read([&](const GraphState& g) { return g.getStatements(filter); });
}

std::vector<Statement> Store::traverseSubgraph(const EntityId& root) const {
  return read([&](const GraphState& g) { return g.traverseSubgraph(root); });
}

std::vector<Entity> Store::suggestEntities(EntityKind kind, std::string_view labelQuery) const {
  return read([&](const GraphState& g) { return g.suggestEntities(kind, labelQuery); });
}

std::optional<Entity> Store::entity(const EntityId& id) const {
  return read([&](const GraphState& g) -> std::optional<Entity> {
    if (const Entity* e = g.findEntity(id)) return *e;
    return std::nullopt;
  });
}

GraphView Store::headView() const {
  return read([](const GraphState& g) { return g.headView(); });
}

std::size_t Store::logSize() const {
  return read([](const GraphState& g) { return g.log().size(); });
}

}  // namespace smartreview::graph
