#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "roboto/engine/state.hpp"

namespace roboto::engine {

enum class Actor { Developer, Computer };

std::string_view toString(Actor actor);

struct ResponsibilityStep {
  Actor actor = Actor::Developer;
  std::string description;

  friend bool operator==(const ResponsibilityStep&, const ResponsibilityStep&) = default;
};

/// Division of labour for the current statement. Throws
/// Error(SessionCompleted) once the strategy has completed.
std::vector<ResponsibilityStep> responsibilitySteps(const ExecutionState& state);

}  // namespace roboto::engine
