// Transport-independent request handling for the `/v1` API.
//
//   GET    /v1/strategies                 {entries: [entry]}
//   POST   /v1/strategies      {text}     201 {entry, diagnostics}
//   GET    /v1/strategies/{id}            {entry, text}
//   DELETE /v1/strategies/{id}            204
//   POST   /v1/sessions        {entryId, rootName?, args}
//                                         201 {sessionId, stateView}
//   GET    /v1/sessions/{id}              stateView
//   POST   /v1/sessions/{id}/next        {input?, expectedOrdinal?}
//   POST   /v1/sessions/{id}/previous    {expectedOrdinal?}
//   POST   /v1/sessions/{id}/variables   {name, value, expectedOrdinal?}
//   GET    /v1/sessions/{id}/events       {events: [event]}
//
// Mutations on one session are serialized. A mutation whose
// expectedOrdinal differs from the session's last event ordinal is
// rejected with 409 and leaves the session untouched. Errors are
// `{code, message, location?}`.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>

#include "roboto/catalog/catalog.hpp"
#include "roboto/engine/json.hpp"
#include "roboto/service/session_store.hpp"
#include "roboto/service/state_view.hpp"

namespace roboto::service {

struct Response {
  int status = 200;
  std::string body;
};

class Service {
public:
  using Clock = std::function<engine::Timestamp()>;

  Service(catalog::Catalog& catalog, SessionStore& store, Clock clock = {});

  Response handle(std::string_view method, std::string_view path, std::string_view body);

private:
  struct Session {
    SessionInfo info;
    engine::ExecutionState state;
    std::mutex mutex;
  };

  engine::Json route(std::string_view method, std::string_view path, const engine::Json& body, int& status);

  engine::Json createSession(const engine::Json& body);
  engine::Json mutate(const std::string& id, std::string_view action, const engine::Json& body);
  std::shared_ptr<Session> session(const std::string& id);
  std::string newSessionId();
  engine::Timestamp timestamp() const;

  catalog::Catalog& catalog_;
  SessionStore& store_;
  Clock clock_;
  std::shared_mutex sessionsMutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 rng_{std::random_device{}()};
};

}  // namespace roboto::service
