#pragma once

#include <string>
#include <string_view>

#include "roboto/engine/state.hpp"

namespace roboto::engine {

inline constexpr int kSnapshotVersion = 1;

/// Versioned JSON snapshot `{version, docHash, source, sourceName, stack,
/// status, history, eventLog}` with keys in sorted order, so equal states
/// serialize to identical bytes.
std::string serializeState(const ExecutionState& state);

/// Errors: FormatVersionMismatch, CorruptPayload.
ExecutionState deserializeState(std::string_view bytes);

}  // namespace roboto::engine
