#include "roboto/engine/scripted.hpp"

#include "roboto/engine/engine.hpp"
#include "roboto/error.hpp"

namespace roboto::engine {

Trace runScripted(std::shared_ptr<const StrategyDoc> doc, std::string_view root, const Bindings& args,
                  std::span<const HumanInput> script)
{
  constexpr Timestamp kScriptedTime = 0;
  ExecutionState state = start(std::move(doc), root, args, kScriptedTime);
  Trace trace;
  std::size_t used = 0;
  while (!state.completed()) {
    const syntax::Statement* stmt = currentStatement(state);
    TraceEntry entry{stmt->location, state.machine.stack.back().strategy, stmt->kind(), std::nullopt, state.depth()};
    if (auto pending = pendingInput(state)) {
      if (used == script.size()) {
        throw Error(ErrorCode::ScriptExhausted,
                    "script ran out of inputs at step " + std::to_string(trace.steps.size() + 1) + " (needs " +
                        std::string(toString(pending->kind)) + ")",
                    stmt->location);
      }
      const HumanInput& input = script[used];
      if (!accepts(pending->kind, input)) {
        throw Error(ErrorCode::ScriptKindMismatch,
                    "script input " + std::to_string(used + 1) + " does not match " +
                        std::string(toString(pending->kind)),
                    stmt->location);
      }
      entry.input = input;
      ++used;
    }
    state = next(std::move(state), entry.input, kScriptedTime);
    trace.steps.push_back(std::move(entry));
  }
  trace.result = *state.machine.completed;
  trace.unusedInputs = script.size() - used;
  return trace;
}

}  // namespace roboto::engine
