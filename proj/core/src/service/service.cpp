#include "roboto/service/service.hpp"

#include <random>
#include <vector>

#include "roboto/engine/engine.hpp"

namespace roboto::service {

using engine::Json;

namespace {

int httpStatusFor(ErrorCode code)
{
  switch (code) {
  case ErrorCode::NotFound:
    return 404;
  case ErrorCode::Conflict:
    return 409;
  case ErrorCode::IoError:
  case ErrorCode::CorruptPayload:
  case ErrorCode::FormatVersionMismatch:
    return 500;
  default:
    return 400;
  }
}

Json errorBody(ErrorCode code, const std::string& message, const std::optional<syntax::SourceLocation>& location)
{
  Json out{{"code", toString(code)}, {"message", message}};
  if (location) out["location"] = engine::locationToJson(*location);
  return out;
}

Json diagnosticsToJson(const std::vector<syntax::Diagnostic>& diagnostics)
{
  Json out = Json::array();
  for (const auto& d : diagnostics) {
    out.push_back(Json{{"severity", d.severity == syntax::Severity::Error ? "error" : "warning"},
                       {"code", d.code},
                       {"message", d.message},
                       {"location", engine::locationToJson(d.location)}});
  }
  return out;
}

Json entryToJson(const catalog::CatalogEntry& e)
{
  return Json{{"id", e.id},
              {"name", e.name},
              {"path", e.path},
              {"summary", e.summary},
              {"strategyNames", e.strategyNames},
              {"contentHash", e.contentHash},
              {"builtin", e.builtin}};
}

std::vector<std::string_view> segments(std::string_view path)
{
  std::vector<std::string_view> out;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    auto slash = path.find('/');
    out.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash);
  }
  return out;
}

const Json& requireField(const Json& body, const char* name)
{
  if (!body.is_object() || !body.contains(name)) {
    throw Error(ErrorCode::BadRequest, std::string("missing field '") + name + "'");
  }
  return body.at(name);
}

std::string requireString(const Json& body, const char* name)
{
  const Json& field = requireField(body, name);
  if (!field.is_string()) throw Error(ErrorCode::BadRequest, std::string("field '") + name + "' must be a string");
  return field.get<std::string>();
}

}  // namespace

Service::Service(catalog::Catalog& catalog, SessionStore& store, Clock clock)
    : catalog_(catalog), store_(store), clock_(std::move(clock))
{
}

engine::Timestamp Service::timestamp() const
{
  return clock_ ? clock_() : engine::now();
}

Response Service::handle(std::string_view method, std::string_view path, std::string_view body)
{
  int status = 200;
  try {
    Json request = nullptr;
    if (!body.empty()) {
      request = Json::parse(body, nullptr, false);
      if (request.is_discarded()) throw Error(ErrorCode::BadRequest, "request body is not valid JSON");
    }
    Json result = route(method, path, request, status);
    return {status, status == 204 ? std::string{} : result.dump()};
  } catch (const catalog::DiagnosticsError& e) {
    Json out = errorBody(e.code(), e.what(), e.location());
    out["diagnostics"] = diagnosticsToJson(e.diagnostics());
    return {httpStatusFor(e.code()), out.dump()};
  } catch (const Error& e) {
    return {httpStatusFor(e.code()), errorBody(e.code(), e.what(), e.location()).dump()};
  } catch (const Json::exception& e) {
    return {400, errorBody(ErrorCode::BadRequest, e.what(), std::nullopt).dump()};
  }
}

Json Service::route(std::string_view method, std::string_view path, const Json& body, int& status)
{
  auto parts = segments(path);
  if (parts.empty() || parts[0] != "v1") throw Error(ErrorCode::NotFound, "unknown route " + std::string(path));
  parts.erase(parts.begin());
  auto unknown = [&] { return Error(ErrorCode::NotFound, "no route for " + std::string(method) + " " + std::string(path)); };

  if (parts.size() >= 1 && parts[0] == "strategies") {
    if (parts.size() == 1 && method == "GET") {
      Json entries = Json::array();
      for (const auto& entry : catalog_.list()) entries.push_back(entryToJson(entry));
      return Json{{"entries", std::move(entries)}};
    }
    if (parts.size() == 1 && method == "POST") {
      catalog::CatalogEntry entry = catalog_.ingest(requireString(body, "text"));
      status = 201;
      return Json{{"entry", entryToJson(entry)}};
    }
    if (parts.size() == 2 && method == "GET") {
      catalog::StoredStrategy stored = catalog_.get(parts[1]);
      return Json{{"entry", entryToJson(stored.entry)}, {"text", stored.text}};
    }
    if (parts.size() == 2 && method == "DELETE") {
      catalog_.remove(parts[1]);
      status = 204;
      return nullptr;
    }
    throw unknown();
  }

  if (parts.size() >= 1 && parts[0] == "sessions") {
    if (parts.size() == 1 && method == "POST") {
      status = 201;
      return createSession(body);
    }
    if (parts.size() < 2) throw unknown();
    std::string id(parts[1]);
    if (parts.size() == 2 && method == "GET") {
      auto s = session(id);
      std::lock_guard lock(s->mutex);
      return stateView(s->info, s->state);
    }
    if (parts.size() == 3 && parts[2] == "events" && method == "GET") {
      auto s = session(id);
      std::lock_guard lock(s->mutex);
      Json events = Json::array();
      for (const auto& event : s->state.events) events.push_back(engine::eventToJson(event));
      return Json{{"sessionId", id}, {"events", std::move(events)}};
    }
    if (parts.size() == 3 && method == "POST" &&
        (parts[2] == "next" || parts[2] == "previous" || parts[2] == "variables")) {
      return mutate(id, parts[2], body);
    }
  }
  throw unknown();
}

// Called with sessionsMutex_ held exclusively.
std::string Service::newSessionId()
{
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  do {
    std::uint64_t bits = rng_();
    id.clear();
    for (int i = 0; i < 16; ++i, bits >>= 4) id += kHex[bits & 0xf];
  } while (store_.load(id).has_value() || sessions_.count(id) != 0);
  return id;
}

Json Service::createSession(const Json& body)
{
  std::string entryId = requireString(body, "entryId");
  auto doc = catalog_.document(entryId);
  std::string root = doc->strategies.front().name;
  if (body.contains("rootName") && !body.at("rootName").is_null()) root = requireString(body, "rootName");
  engine::Bindings args;
  if (body.contains("args") && !body.at("args").is_null()) args = engine::bindingsFromWire(body.at("args"));

  engine::Timestamp at = timestamp();
  engine::ExecutionState state = engine::start(doc, root, std::move(args), at);

  auto s = std::make_shared<Session>();
  s->state = std::move(state);
  std::unique_lock lock(sessionsMutex_);
  s->info = {newSessionId(), entryId, at, at};
  store_.create({s->info.sessionId, entryId, at}, s->state.events.front());
  sessions_.emplace(s->info.sessionId, s);
  return Json{{"sessionId", s->info.sessionId}, {"stateView", stateView(s->info, s->state)}};
}

std::shared_ptr<Service::Session> Service::session(const std::string& id)
{
  {
    std::shared_lock lock(sessionsMutex_);
    if (auto it = sessions_.find(id); it != sessions_.end()) return it->second;
  }
  std::unique_lock lock(sessionsMutex_);
  if (auto it = sessions_.find(id); it != sessions_.end()) return it->second;

  auto persisted = store_.load(id);
  if (!persisted || persisted->events.empty()) throw Error(ErrorCode::NotFound, "no session with id '" + id + "'");
  auto s = std::make_shared<Session>();
  s->state = engine::replay(catalog_.document(persisted->meta.entryId), persisted->events);
  s->info = {id, persisted->meta.entryId, persisted->meta.createdAt, persisted->events.back().timestamp};
  sessions_.emplace(id, s);
  return s;
}

Json Service::mutate(const std::string& id, std::string_view action, const Json& body)
{
  auto s = session(id);
  std::lock_guard lock(s->mutex);

  if (body.is_object() && body.contains("expectedOrdinal") && !body.at("expectedOrdinal").is_null()) {
    auto expected = body.at("expectedOrdinal").get<std::uint64_t>();
    if (expected != s->state.lastOrdinal()) {
      throw Error(ErrorCode::Conflict, "session is at ordinal " + std::to_string(s->state.lastOrdinal()) +
                                           ", request expected " + std::to_string(expected));
    }
  }

  engine::Timestamp at = timestamp();
  engine::ExecutionState next;
  if (action == "next") {
    std::optional<engine::HumanInput> input;
    if (body.is_object()) {
      // The input may be nested under "input" or given inline.
      if (body.contains("input")) {
        input = engine::inputFromWire(body.at("input"));
      } else {
        Json fields = body;
        fields.erase("expectedOrdinal");
        input = engine::inputFromWire(fields);
      }
    }
    next = engine::next(s->state, std::move(input), at);
  } else if (action == "previous") {
    next = engine::previous(s->state, at);
  } else {
    std::string name = requireString(body, "name");
    next = engine::setVariable(s->state, name, engine::valueFromWire(requireField(body, "value")), at);
  }

  store_.append(id, next.events.back());
  s->state = std::move(next);
  s->info.updatedAt = at;
  return stateView(s->info, s->state);
}

}  // namespace roboto::service
