#include "roboto/engine/engine.hpp"

#include <chrono>

#include "roboto/error.hpp"
#include "roboto/syntax/format.hpp"
#include "roboto/syntax/validate.hpp"

namespace roboto::engine {

using namespace roboto::syntax;

namespace {

struct Context {
  ExecutionState& state;

  Frame& top() { return state.machine.stack.back(); }

  const Strategy& strategyOf(const Frame& frame) const
  {
    const Strategy* s = state.doc->find(frame.strategy);
    if (s == nullptr) throw Error(ErrorCode::CorruptPayload, "frame refers to unknown strategy '" + frame.strategy + "'");
    return *s;
  }

  const Statement& current()
  {
    const Statement* stmt = statementAt(strategyOf(top()), top().pc);
    if (stmt == nullptr) throw Error(ErrorCode::CorruptPayload, "program counter is out of range");
    return *stmt;
  }

  void bind(Frame& frame, const std::string& name, Value value)
  {
    frame.bindings[name] = std::move(value);
    frame.referenced.insert(name);
  }

  // Moves the top frame's counter to the statement that follows the current
  // one: the next sibling, the head of an enclosing loop, or off the end of
  // the body (an implicit RETURN nothing).
  void advance()
  {
    Frame& frame = top();
    const Strategy& strategy = strategyOf(frame);
    StatementPath& pc = frame.pc;
    for (;;) {
      ++pc.back();
      const Block* block = enclosingBlock(strategy, pc);
      if (pc.back() < block->size()) return;
      pc.pop_back();
      if (pc.empty()) {
        popFrame(Value::nothing());
        return;
      }
      StatementKind parent = statementAt(strategy, pc)->kind();
      if (parent == StatementKind::ForEach || parent == StatementKind::Until) return;
    }
  }

  void popFrame(Value value)
  {
    ReturnSlot slot = std::move(top().returnSlot);
    state.machine.stack.pop_back();
    if (state.machine.stack.empty()) {
      state.machine.completed = std::move(value);
      return;
    }
    switch (slot.kind) {
      case ReturnSlot::Kind::Discard:
        advance();
        break;
      case ReturnSlot::Kind::Assign:
        bind(top(), slot.target, std::move(value));
        advance();
        break;
      case ReturnSlot::Kind::Propagate:
        popFrame(std::move(value));
        break;
    }
  }

  void enterCall(const CallExpr& call, ReturnSlot slot)
  {
    if (state.machine.stack.size() >= kMaxStackDepth) {
      throw Error(ErrorCode::StackOverflow, "call depth limit reached entering '" + call.target + "'");
    }
    const Strategy* callee = state.doc->find(call.target);
    if (callee == nullptr) throw Error(ErrorCode::UnknownStrategy, "unknown strategy '" + call.target + "'");
    if (callee->params.size() != call.args.size()) {
      throw Error(ErrorCode::ArityMismatch, "wrong number of arguments for '" + call.target + "'");
    }
    Frame frame;
    frame.strategy = callee->name;
    frame.pc = {0};
    frame.returnSlot = std::move(slot);
    const Frame& caller = top();
    for (std::size_t i = 0; i < call.args.size(); ++i) {
      auto it = caller.bindings.find(call.args[i]);
      frame.bindings[callee->params[i]] = it == caller.bindings.end() ? Value::nothing() : it->second;
      frame.referenced.insert(callee->params[i]);
    }
    state.machine.stack.push_back(std::move(frame));
  }

  Value lookup(const std::string& name)
  {
    auto it = top().bindings.find(name);
    return it == top().bindings.end() ? Value::nothing() : it->second;
  }

  void execute(const std::optional<HumanInput>& input)
  {
    const Statement& stmt = current();
    auto decision = [&] { return std::get<Decision>(*input).value; };
    auto answer = [&] { return std::get<Answer>(*input).value; };

    switch (stmt.kind()) {
      case StatementKind::Action:
        advance();
        break;
      case StatementKind::Call:
        enterCall(std::get<CallStmt>(stmt.node).call, {});
        break;
      case StatementKind::Conditional:
        if (decision()) top().pc.push_back(0);
        else advance();
        break;
      case StatementKind::Until:
        if (decision()) advance();
        else top().pc.push_back(0);
        break;
      case StatementKind::ForEach: {
        const auto& loop = std::get<ForEachStmt>(stmt.node);
        Frame& frame = top();
        auto [it, fresh] = frame.loops.try_emplace(frame.pc, LoopCursor{loop.listVar, 0});
        Value::TextList items = lookup(loop.listVar).elements();
        if (it->second.consumed < items.size()) {
          bind(frame, loop.elementVar, Value::text(items[it->second.consumed]));
          ++it->second.consumed;
          frame.pc.push_back(0);
        } else {
          frame.loops.erase(it);
          advance();
        }
        break;
      }
      case StatementKind::Assignment: {
        const auto& assign = std::get<AssignmentStmt>(stmt.node);
        if (const CallExpr* call = assign.query.call()) {
          enterCall(*call, {ReturnSlot::Kind::Assign, assign.target});
        } else {
          bind(top(), assign.target, answer());
          advance();
        }
        break;
      }
      case StatementKind::Return: {
        const Query& query = std::get<ReturnStmt>(stmt.node).query;
        if (const CallExpr* call = query.call()) enterCall(*call, {ReturnSlot::Kind::Propagate, {}});
        else if (query.isNothing()) popFrame(Value::nothing());
        else if (const IdentRef* ref = query.soleReference()) popFrame(lookup(ref->name));
        else popFrame(answer());
        break;
      }
    }
  }
};

void record(ExecutionState& state, EventPayload payload, Timestamp at)
{
  state.events.push_back(Event{state.lastOrdinal() + 1, std::move(payload), at});
}

std::optional<InputKind> requiredInput(const ExecutionState& state, const Statement& stmt)
{
  switch (stmt.kind()) {
    case StatementKind::Action:
      return InputKind::ActionAcknowledge;
    case StatementKind::Call:
      return std::nullopt;
    case StatementKind::Conditional:
    case StatementKind::Until:
      return InputKind::ConditionDecision;
    case StatementKind::ForEach: {
      const Frame& frame = state.machine.stack.back();
      const auto& loop = std::get<ForEachStmt>(stmt.node);
      auto cursor = frame.loops.find(frame.pc);
      std::size_t consumed = cursor == frame.loops.end() ? 0 : cursor->second.consumed;
      auto binding = frame.bindings.find(loop.listVar);
      std::size_t size = binding == frame.bindings.end() ? 0 : binding->second.elements().size();
      if (consumed < size) return InputKind::IterationAcknowledge;
      return std::nullopt;
    }
    case StatementKind::Assignment:
      if (std::get<AssignmentStmt>(stmt.node).query.call()) return std::nullopt;
      return InputKind::QueryAnswer;
    case StatementKind::Return: {
      const Query& query = std::get<ReturnStmt>(stmt.node).query;
      if (query.call()) return std::nullopt;
      if (query.isNothing() || query.soleReference()) return InputKind::ActionAcknowledge;
      return InputKind::QueryAnswer;
    }
  }
  return std::nullopt;
}

std::string renderRef(const std::string& name, const Bindings& bindings)
{
  std::string out = "'" + name + "'";
  if (auto it = bindings.find(name); it != bindings.end()) out += " [" + it->second.display() + "]";
  return out;
}

std::string renderParts(const std::vector<QueryPart>& parts, const Bindings& bindings)
{
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out += ' ';
    if (const auto* w = std::get_if<Word>(&part)) {
      out += w->text;
    } else if (const auto* r = std::get_if<IdentRef>(&part)) {
      out += renderRef(r->name, bindings);
    } else if (const auto* c = std::get_if<CallExpr>(&part)) {
      out += c->target + "(";
      for (std::size_t i = 0; i < c->args.size(); ++i) {
        if (i != 0) out += ' ';
        out += renderRef(c->args[i], bindings);
      }
      out += ')';
    } else {
      out += "nothing";
    }
  }
  return out;
}

}  // namespace

Timestamp now()
{
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string_view toString(InputKind kind)
{
  switch (kind) {
    case InputKind::ConditionDecision: return "ConditionDecision";
    case InputKind::QueryAnswer: return "QueryAnswer";
    case InputKind::ActionAcknowledge: return "ActionAcknowledge";
    case InputKind::IterationAcknowledge: return "IterationAcknowledge";
  }
  return "?";
}

std::string_view toString(Status::Kind kind)
{
  switch (kind) {
    case Status::Kind::AwaitingInput: return "AwaitingInput";
    case Status::Kind::ReadyToAdvance: return "ReadyToAdvance";
    case Status::Kind::Completed: return "Completed";
  }
  return "?";
}

bool accepts(InputKind kind, const HumanInput& input)
{
  switch (kind) {
    case InputKind::ConditionDecision: return std::holds_alternative<Decision>(input);
    case InputKind::QueryAnswer: return std::holds_alternative<Answer>(input);
    case InputKind::ActionAcknowledge:
    case InputKind::IterationAcknowledge: return std::holds_alternative<Acknowledge>(input);
  }
  return false;
}

std::string renderPrompt(const Statement& stmt, const Bindings& bindings)
{
  return std::visit(
      [&](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ActionStmt>) {
          std::vector<QueryPart> parts;
          for (const auto& w : node.words) std::visit([&](const auto& p) { parts.emplace_back(p); }, w);
          return renderParts(parts, bindings);
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          return "DO " + renderParts({node.call}, bindings);
        } else if constexpr (std::is_same_v<T, ConditionalStmt>) {
          return "IF " + renderParts(node.query.parts, bindings);
        } else if constexpr (std::is_same_v<T, ForEachStmt>) {
          return "FOR EACH '" + node.elementVar + "' IN " + renderRef(node.listVar, bindings);
        } else if constexpr (std::is_same_v<T, UntilStmt>) {
          return "UNTIL " + renderParts(node.query.parts, bindings);
        } else if constexpr (std::is_same_v<T, AssignmentStmt>) {
          return "SET '" + node.target + "' TO " + renderParts(node.query.parts, bindings);
        } else {
          return "RETURN " + renderParts(node.query.parts, bindings);
        }
      },
      stmt.node);
}

ExecutionState start(std::shared_ptr<const StrategyDoc> doc, std::string_view root, Bindings args, Timestamp at)
{
  auto diags = validate(*doc);
  if (hasErrors(diags)) {
    std::string message = "strategy document has validation errors";
    for (const auto& d : diags) {
      if (d.severity == Severity::Error) {
        message += "; " + formatDiagnostic(d);
      }
    }
    throw Error(ErrorCode::ValidationFailed, message);
  }
  const Strategy* strategy = doc->find(root);
  if (strategy == nullptr) throw Error(ErrorCode::UnknownStrategy, "unknown strategy '" + std::string(root) + "'");

  bool exact = args.size() == strategy->params.size();
  for (const auto& p : strategy->params) exact = exact && args.contains(p);
  if (!exact) {
    std::string expected;
    for (const auto& p : strategy->params) expected += (expected.empty() ? "" : ", ") + p;
    throw Error(ErrorCode::ArityMismatch,
                "strategy '" + strategy->name + "' expects arguments for exactly: (" + expected + ")");
  }

  ExecutionState state;
  state.doc = std::move(doc);
  Frame frame;
  frame.strategy = strategy->name;
  frame.pc = {0};
  frame.referenced.insert(strategy->params.begin(), strategy->params.end());
  frame.bindings = args;
  state.machine.stack.push_back(std::move(frame));
  record(state, StartedWithArguments{strategy->name, std::move(args)}, at);
  return state;
}

std::optional<PendingInput> pendingInput(const ExecutionState& state)
{
  const Statement* stmt = currentStatement(state);
  if (stmt == nullptr) return std::nullopt;
  auto kind = requiredInput(state, *stmt);
  if (!kind) return std::nullopt;
  return PendingInput{*kind, renderPrompt(*stmt, state.machine.stack.back().bindings), stmt->location};
}

Status status(const ExecutionState& state)
{
  Status s;
  if (state.machine.completed) {
    s.kind = Status::Kind::Completed;
    s.value = *state.machine.completed;
    return s;
  }
  s.pending = pendingInput(state);
  s.kind = s.pending ? Status::Kind::AwaitingInput : Status::Kind::ReadyToAdvance;
  return s;
}

const Strategy* currentStrategy(const ExecutionState& state)
{
  if (state.machine.completed || state.machine.stack.empty()) return nullptr;
  return state.doc->find(state.machine.stack.back().strategy);
}

const Statement* currentStatement(const ExecutionState& state)
{
  const Strategy* strategy = currentStrategy(state);
  if (strategy == nullptr) return nullptr;
  return statementAt(*strategy, state.machine.stack.back().pc);
}

ExecutionState next(ExecutionState state, std::optional<HumanInput> input, Timestamp at)
{
  if (state.completed()) throw Error(ErrorCode::SessionCompleted, "the strategy has already completed");
  const Statement* stmt = currentStatement(state);
  if (stmt == nullptr) throw Error(ErrorCode::CorruptPayload, "no current statement");
  auto kind = requiredInput(state, *stmt);
  if (kind && !input) {
    throw Error(ErrorCode::MissingInput, "this statement needs " + std::string(toString(*kind)), stmt->location);
  }
  if (!kind && input) {
    throw Error(ErrorCode::InputKindMismatch, "this statement takes no input", stmt->location);
  }
  if (kind && !accepts(*kind, *input)) {
    throw Error(ErrorCode::InputKindMismatch, "this statement needs " + std::string(toString(*kind)),
                stmt->location);
  }

  Machine before = state.machine;
  Context{state}.execute(input);
  state.history.push_back(std::move(before));
  record(state, AdvancedWith{std::move(input)}, at);
  return state;
}

ExecutionState previous(ExecutionState state, Timestamp at)
{
  if (state.history.empty()) throw Error(ErrorCode::AtStart, "already at the first step");
  state.machine = std::move(state.history.back());
  state.history.pop_back();
  record(state, SteppedBack{}, at);
  return state;
}

ExecutionState setVariable(ExecutionState state, std::string_view name, Value value, Timestamp at)
{
  if (state.completed()) throw Error(ErrorCode::SessionCompleted, "the strategy has already completed");
  Frame& frame = state.machine.stack.back();
  auto binding = frame.bindings.find(std::string(name));
  if (binding == frame.bindings.end() || !frame.referenced.contains(binding->first)) {
    throw Error(ErrorCode::UnknownOrHiddenVariable, "no visible variable named '" + std::string(name) + "'");
  }

  Value::TextList oldItems = binding->second.elements();
  Value::TextList newItems = value.elements();
  for (const auto& [path, cursor] : frame.loops) {
    if (cursor.listVar != binding->first) continue;
    for (std::size_t i = 0; i < cursor.consumed && i < oldItems.size(); ++i) {
      if (i >= newItems.size() || newItems[i] != oldItems[i]) {
        throw Error(ErrorCode::LoopElementLocked,
                    "element " + std::to_string(i + 1) + " of '" + binding->first +
                        "' has already been used by the loop and cannot be changed");
      }
    }
  }

  state.history.push_back(state.machine);
  Value old = std::exchange(state.machine.stack.back().bindings[std::string(name)], value);
  record(state, VariableEdited{std::string(name), std::move(old), std::move(value)}, at);
  return state;
}

std::vector<std::pair<std::string, Value>> visibleVariables(const ExecutionState& state)
{
  std::vector<std::pair<std::string, Value>> out;
  if (state.machine.completed || state.machine.stack.empty()) return out;
  const Frame& frame = state.machine.stack.back();
  for (const auto& [name, value] : frame.bindings) {
    if (frame.referenced.contains(name)) out.emplace_back(name, value);
  }
  return out;
}

bool observablyEqual(const ExecutionState& a, const ExecutionState& b)
{
  return a.machine == b.machine;
}

ExecutionState replay(std::shared_ptr<const StrategyDoc> doc, std::span<const Event> events)
{
  if (events.empty()) throw Error(ErrorCode::CorruptPayload, "event log is empty");
  const auto* started = std::get_if<StartedWithArguments>(&events.front().payload);
  if (started == nullptr || events.front().ordinal != 1) {
    throw Error(ErrorCode::CorruptPayload, "event log must begin with the start event");
  }
  ExecutionState state = start(std::move(doc), started->root, started->args, events.front().timestamp);
  for (const Event& event : events.subspan(1)) {
    if (event.ordinal != state.lastOrdinal() + 1) {
      throw Error(ErrorCode::CorruptPayload, "event ordinals are not contiguous at " + std::to_string(event.ordinal));
    }
    std::visit(
        [&](const auto& payload) {
          using T = std::decay_t<decltype(payload)>;
          if constexpr (std::is_same_v<T, StartedWithArguments>) {
            throw Error(ErrorCode::CorruptPayload, "duplicate start event");
          } else if constexpr (std::is_same_v<T, AdvancedWith>) {
            state = next(std::move(state), payload.input, event.timestamp);
          } else if constexpr (std::is_same_v<T, SteppedBack>) {
            state = previous(std::move(state), event.timestamp);
          } else {
            state = setVariable(std::move(state), payload.name, payload.newValue, event.timestamp);
          }
        },
        event.payload);
  }
  return state;
}

}  // namespace roboto::engine
