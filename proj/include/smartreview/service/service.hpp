#pragma once

#include <memory>
#include <string>

#include "smartreview/service/platform.hpp"

namespace smartreview::service {

struct ServiceOptions {
  // Mutating requests allowed per user and minute; 0 disables the limit.
  std::size_t maxWritesPerMinute = 0;
};

// HTTP/JSON interface over a Platform. Every POST, PATCH and DELETE except
// account registration and SPARQL queries requires "Authorization: Bearer
// <token>"; the check runs before routing, so unauthenticated requests never
// reach a handler.
//
//   POST   /accounts                      {displayName} -> {userId, token}
//   GET    /articles                      list
//   POST   /articles                      {title, researchField}
//   GET    /articles/{id}                 article with sections
//   POST   /articles/{id}/sections        {position?, heading, type, ...}
//   PATCH  /sections/{id}                 {heading?, type?..., position?}
//   DELETE /sections/{id}
//   POST   /papers                        {title, authors, date}
//   POST   /entities                      {kind, label, description?, sameAs?}
//   GET    /entities?kind&q               label suggestions
//   POST   /comparisons                   {label, columns, properties, cells}
//   GET    /comparisons/{id}              (and /csv)
//   PATCH  /comparisons/{id}/cells        {contribution, property, values}
//   POST   /visualizations                {comparison, chart, series, label}
//   POST   /articles/{id}/publish         {description}
//   GET    /articles/{id}/versions        (and /versions/{v}/html|rdf)
//   GET    /articles/{id}/diff?from&to    JSON, or text/plain by Accept
//   GET    /articles/{id}/html            head render
//   GET    /articles/{id}/rdf             N-Triples or Turtle by Accept/format
//   GET    /rdf/dump                      whole head graph
//   POST   /sparql                        query text -> JSON or CSV by Accept
class Service {
 public:
  explicit Service(Platform& platform, ServiceOptions options = {});
  ~Service();

  // Binds without serving; port 0 picks a free port. Returns the port or -1.
  int bind(const std::string& host, int port);
  // Serves until stop(); call after bind().
  bool run();
  void stop();
  // Blocks until the listener accepts connections.
  void waitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace smartreview::service
