#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roboto/engine/state.hpp"
#include "roboto/syntax/ast.hpp"

namespace roboto::engine {

struct TraceEntry {
  SourceLocation location;
  std::string strategy;
  syntax::StatementKind kind = syntax::StatementKind::Action;
  std::optional<HumanInput> input;
  std::size_t depth = 0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct Trace {
  std::vector<TraceEntry> steps;
  Value result;
  /// Script entries left over after completion.
  std::size_t unusedInputs = 0;
};

/// Runs a strategy to completion, feeding `script` to every statement that
/// awaits input. Statements that need no input consume nothing.
///
/// Errors: ScriptExhausted, ScriptKindMismatch, plus start errors.
Trace runScripted(std::shared_ptr<const StrategyDoc> doc, std::string_view root, const Bindings& args,
                  std::span<const HumanInput> script);

}  // namespace roboto::engine
