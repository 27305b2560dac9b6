#include "roboto/service/session_store.hpp"

#include <algorithm>
#include <fstream>

#include "roboto/engine/json.hpp"
#include "roboto/error.hpp"
#include "syntax/lexer.hpp"

namespace roboto::service {

namespace fs = std::filesystem;
using engine::Json;

namespace {

bool safeSessionId(const std::string& id)
{
  return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), syntax::detail::isIdentChar);
}

void appendLine(const fs::path& path, const std::string& line)
{
  std::ofstream out(path, std::ios::binary | std::ios::app);
  out << line << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "cannot append to " + path.string());
}

}  // namespace

SessionStore::SessionStore(std::optional<fs::path> dir) : dir_(std::move(dir))
{
  if (!dir_) return;
  std::error_code ec;
  fs::create_directories(*dir_, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create session store " + dir_->string() + ": " + ec.message());
}

fs::path SessionStore::sessionDir(const std::string& sessionId) const
{
  return *dir_ / sessionId;
}

void SessionStore::create(const SessionMeta& meta, const engine::Event& first)
{
  if (!dir_) return;
  fs::path dir = sessionDir(meta.sessionId);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  Json metaJson{{"sessionId", meta.sessionId}, {"entryId", meta.entryId}, {"createdAt", meta.createdAt}};
  {
    std::ofstream out(dir / "meta.json", std::ios::binary | std::ios::trunc);
    out << metaJson.dump() << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "cannot write session metadata for " + meta.sessionId);
  }
  appendLine(dir / "events.jsonl", engine::eventToJson(first).dump());
}

void SessionStore::append(const std::string& sessionId, const engine::Event& event)
{
  if (!dir_) return;
  appendLine(sessionDir(sessionId) / "events.jsonl", engine::eventToJson(event).dump());
}

std::optional<PersistedSession> SessionStore::load(const std::string& sessionId) const
{
  if (!dir_ || !safeSessionId(sessionId)) return std::nullopt;
  fs::path dir = sessionDir(sessionId);
  std::ifstream metaIn(dir / "meta.json", std::ios::binary);
  if (!metaIn) return std::nullopt;

  PersistedSession session;
  try {
    Json meta = Json::parse(metaIn);
    session.meta = {meta.at("sessionId").get<std::string>(), meta.at("entryId").get<std::string>(),
                    meta.at("createdAt").get<engine::Timestamp>()};
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::CorruptPayload, "session " + sessionId + " has unreadable metadata: " + e.what());
  }

  std::ifstream eventsIn(dir / "events.jsonl", std::ios::binary);
  std::string line;
  while (std::getline(eventsIn, line)) {
    if (syntax::detail::trim(line).empty()) continue;
    try {
      session.events.push_back(engine::eventFromJson(Json::parse(line)));
    } catch (const Json::exception&) {
      // A torn final line from a crash mid-write; everything before it was
      // acknowledged and is kept.
      break;
    }
  }
  return session;
}

}  // namespace roboto::service
