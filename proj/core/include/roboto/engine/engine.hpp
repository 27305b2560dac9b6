// Mixed-initiative stepping of a strategy.
//
// One call to `next` executes exactly one statement. The statement kind
// decides what the human must supply first (see `pendingInput`):
//
//   Action                      acknowledge
//   IF / UNTIL                  true or false
//   FOR EACH with elements left acknowledge the iteration
//   SET / RETURN with a query   the answer (RETURN nothing and RETURN 'x'
//                               only need an acknowledgement)
//   DO, or a query that calls   nothing; the engine enters the callee
//
// Every forward step and every variable edit can be undone with
// `previous`. All mutating operations append exactly one event; replaying
// the events reproduces the state.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roboto/engine/state.hpp"

namespace roboto::engine {

/// Upper bound on call depth. Every step keeps a snapshot of the whole stack
/// for undo, so memory grows with depth times steps; the bound keeps a
/// runaway recursion from exhausting memory.
inline constexpr std::size_t kMaxStackDepth = 1000;

Timestamp now();

/// Errors: ValidationFailed, UnknownStrategy, ArityMismatch.
ExecutionState start(std::shared_ptr<const StrategyDoc> doc, std::string_view root, Bindings args,
                     Timestamp at = now());

/// Errors: SessionCompleted, MissingInput, InputKindMismatch.
ExecutionState next(ExecutionState state, std::optional<HumanInput> input, Timestamp at = now());

/// Errors: AtStart.
ExecutionState previous(ExecutionState state, Timestamp at = now());

/// Errors: SessionCompleted, UnknownOrHiddenVariable, LoopElementLocked.
ExecutionState setVariable(ExecutionState state, std::string_view name, Value value, Timestamp at = now());

/// Rebuilds a state by applying `events` (which must begin with the start
/// event) to a fresh start. Errors: CorruptPayload, plus any engine error.
ExecutionState replay(std::shared_ptr<const StrategyDoc> doc, std::span<const Event> events);

Status status(const ExecutionState& state);
std::optional<PendingInput> pendingInput(const ExecutionState& state);

/// The statement under the program counter, or null once completed.
const syntax::Statement* currentStatement(const ExecutionState& state);
const syntax::Strategy* currentStrategy(const ExecutionState& state);

/// Bindings of the current frame that have been referenced, by name.
std::vector<std::pair<std::string, Value>> visibleVariables(const ExecutionState& state);

/// Compares program counters, stacks, bindings, visibility and status;
/// ignores history and events.
bool observablyEqual(const ExecutionState& a, const ExecutionState& b);

/// Renders a statement with bound references followed by their values.
std::string renderPrompt(const syntax::Statement& stmt, const Bindings& bindings);

}  // namespace roboto::engine
