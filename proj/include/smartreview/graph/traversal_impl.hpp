#pragma once

#include <algorithm>
#include <deque>
#include <set>

namespace smartreview::graph {

template <class OutgoingFn, class SharedFn>
std::vector<Statement> traverseFrom(const EntityId& root, OutgoingFn&& outgoing,
                                    SharedFn&& isShared) {
  std::vector<Statement> result;
  std::set<StatementId> seen;
  std::set<EntityId> visited{root};
  std::deque<EntityId> queue{root};
  while (!queue.empty()) {
    EntityId node = std::move(queue.front());
    queue.pop_front();
    for (const Statement* statement : outgoing(node)) {
      if (!seen.insert(statement->id).second) continue;
      result.push_back(*statement);
      const EntityId& next = statement->object();
      if (next.kind != EntityKind::Resource || isShared(next)) continue;
      if (visited.insert(next).second) queue.push_back(next);
    }
  }
  std::sort(result.begin(), result.end(),
            [](const Statement& a, const Statement& b) { return a.id < b.id; });
  return result;
}

}  // namespace smartreview::graph
