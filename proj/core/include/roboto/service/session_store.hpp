#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "roboto/engine/state.hpp"

namespace roboto::service {

struct SessionMeta {
  std::string sessionId;
  std::string entryId;
  engine::Timestamp createdAt = 0;
};

struct PersistedSession {
  SessionMeta meta;
  std::vector<engine::Event> events;
};

/// Durable event logs, one directory per session:
/// `<dir>/<sessionId>/meta.json` and `<dir>/<sessionId>/events.jsonl`.
/// Without a directory nothing is persisted.
class SessionStore {
public:
  explicit SessionStore(std::optional<std::filesystem::path> dir);

  bool persistent() const { return dir_.has_value(); }

  void create(const SessionMeta& meta, const engine::Event& first);
  /// Appends and flushes one event line before returning.
  void append(const std::string& sessionId, const engine::Event& event);
  std::optional<PersistedSession> load(const std::string& sessionId) const;

private:
  std::filesystem::path sessionDir(const std::string& sessionId) const;

  std::optional<std::filesystem::path> dir_;
};

}  // namespace roboto::service
