#pragma once

#include <string>

#include "roboto/engine/json.hpp"
#include "roboto/engine/state.hpp"

namespace roboto::service {

struct SessionInfo {
  std::string sessionId;
  std::string entryId;
  engine::Timestamp createdAt = 0;
  engine::Timestamp updatedAt = 0;
};

/// The single response shape of every session route. It carries everything
/// a client needs to render the session, so clients keep no state of their
/// own:
///
///   statements          every statement of the document in source order,
///                       with strategy, location, text, comment, depth,
///                       kind and a `current` flag
///   currentLocation     location of the statement under the program
///                       counter (null once completed)
///   pendingInput        {kind, prompt, location} or null
///   visibleVariables    [{name, value}] of the current frame
///   responsibilitySteps [{actor, description}] for the current statement
///   canStepBack, status, introText, lastOrdinal and a few identifiers
engine::Json stateView(const SessionInfo& info, const engine::ExecutionState& state);

}  // namespace roboto::service
