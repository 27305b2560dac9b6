// Execution state of one strategy run.
//
// The computer owns the call stack, the program counter of every frame,
// variable bindings and the undo history. Everything the human contributes
// arrives as a HumanInput through `next` or as a variable edit.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "roboto/engine/value.hpp"
#include "roboto/syntax/ast.hpp"

namespace roboto::engine {

using syntax::SourceLocation;
using syntax::StatementPath;
using syntax::StrategyDoc;

/// Milliseconds since the Unix epoch.
using Timestamp = std::int64_t;

using Bindings = std::map<std::string, Value>;

/// Where a callee's returned value goes when its frame pops.
struct ReturnSlot {
  enum class Kind { Discard, Assign, Propagate };
  Kind kind = Kind::Discard;
  std::string target;  // Assign only

  friend bool operator==(const ReturnSlot&, const ReturnSlot&) = default;
};

/// Progress of one active FOR EACH. Elements at indices below `consumed`
/// have been bound to the element variable and can no longer be edited.
struct LoopCursor {
  std::string listVar;
  std::size_t consumed = 0;

  friend bool operator==(const LoopCursor&, const LoopCursor&) = default;
};

struct Frame {
  std::string strategy;
  /// Program counter. For caller frames it rests on the calling statement.
  StatementPath pc;
  Bindings bindings;
  std::set<std::string> referenced;
  std::map<StatementPath, LoopCursor> loops;
  ReturnSlot returnSlot;

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// The observable machine: call stack plus the completion value once the
/// root strategy has returned.
struct Machine {
  std::vector<Frame> stack;
  std::optional<Value> completed;

  friend bool operator==(const Machine&, const Machine&) = default;
};

enum class InputKind { ConditionDecision, QueryAnswer, ActionAcknowledge, IterationAcknowledge };

std::string_view toString(InputKind kind);

struct Decision {
  bool value = false;
  friend bool operator==(const Decision&, const Decision&) = default;
};
struct Answer {
  Value value;
  friend bool operator==(const Answer&, const Answer&) = default;
};
struct Acknowledge {
  friend bool operator==(const Acknowledge&, const Acknowledge&) = default;
};

using HumanInput = std::variant<Decision, Answer, Acknowledge>;

bool accepts(InputKind kind, const HumanInput& input);

/// What the human must supply before the engine can advance.
struct PendingInput {
  InputKind kind = InputKind::ActionAcknowledge;
  /// The current statement with referenced variable values shown inline.
  std::string prompt;
  SourceLocation location;
};

struct Status {
  enum class Kind { AwaitingInput, ReadyToAdvance, Completed };
  Kind kind = Kind::ReadyToAdvance;
  std::optional<PendingInput> pending;  // AwaitingInput
  Value value;                          // Completed
};

std::string_view toString(Status::Kind kind);

struct StartedWithArguments {
  std::string root;
  Bindings args;
  friend bool operator==(const StartedWithArguments&, const StartedWithArguments&) = default;
};
struct AdvancedWith {
  std::optional<HumanInput> input;
  friend bool operator==(const AdvancedWith&, const AdvancedWith&) = default;
};
struct SteppedBack {
  friend bool operator==(const SteppedBack&, const SteppedBack&) = default;
};
struct VariableEdited {
  std::string name;
  Value oldValue;
  Value newValue;
  friend bool operator==(const VariableEdited&, const VariableEdited&) = default;
};

using EventPayload = std::variant<StartedWithArguments, AdvancedWith, SteppedBack, VariableEdited>;

struct Event {
  std::uint64_t ordinal = 0;
  EventPayload payload;
  Timestamp timestamp = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

/// A strategy execution. Mutating operations in engine.hpp take a state by
/// value and return the successor, so a failed operation leaves the
/// caller's copy untouched.
struct ExecutionState {
  std::shared_ptr<const StrategyDoc> doc;
  Machine machine;
  /// Machine snapshots before each forward step or edit not yet undone.
  std::vector<Machine> history;
  std::vector<Event> events;

  std::uint64_t lastOrdinal() const { return events.empty() ? 0 : events.back().ordinal; }
  bool completed() const { return machine.completed.has_value(); }
  std::size_t depth() const { return machine.stack.size(); }
};

}  // namespace roboto::engine
