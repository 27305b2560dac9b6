#include "roboto/engine/snapshot.hpp"

#include "roboto/digest.hpp"
#include "roboto/engine/engine.hpp"
#include "roboto/engine/json.hpp"
#include "roboto/error.hpp"
#include "roboto/syntax/parser.hpp"

namespace roboto::engine {

namespace {

[[noreturn]] void corrupt(const std::string& what)
{
  throw Error(ErrorCode::CorruptPayload, "corrupt snapshot: " + what);
}

[[noreturn]] void badRequest(const std::string& what)
{
  throw Error(ErrorCode::BadRequest, what);
}

const Json& field(const Json& obj, const char* key)
{
  if (!obj.is_object() || !obj.contains(key)) corrupt(std::string("missing field '") + key + "'");
  return obj.at(key);
}

Json pathToJson(const StatementPath& path)
{
  return Json(path);
}

StatementPath pathFromJson(const Json& json)
{
  if (!json.is_array()) corrupt("statement path must be an array");
  StatementPath path;
  for (const auto& i : json) {
    if (!i.is_number_unsigned()) corrupt("statement path entries must be unsigned integers");
    path.push_back(i.get<std::size_t>());
  }
  return path;
}

std::string_view slotName(ReturnSlot::Kind kind)
{
  switch (kind) {
    case ReturnSlot::Kind::Discard: return "discard";
    case ReturnSlot::Kind::Assign: return "assign";
    case ReturnSlot::Kind::Propagate: return "propagate";
  }
  return "?";
}

Json machineToJson(const Machine& machine)
{
  Json stack = Json::array();
  for (const auto& frame : machine.stack) stack.push_back(frameToJson(frame));
  Json out{{"stack", std::move(stack)}};
  if (machine.completed) out["completed"] = valueToJson(*machine.completed);
  return out;
}

Machine machineFromJson(const Json& json)
{
  Machine machine;
  const Json& stack = field(json, "stack");
  if (!stack.is_array()) corrupt("stack must be an array");
  for (const auto& frame : stack) machine.stack.push_back(frameFromJson(frame));
  if (json.contains("completed")) machine.completed = valueFromJson(json.at("completed"));
  return machine;
}

void checkMachine(const StrategyDoc& doc, const Machine& machine)
{
  if (machine.stack.empty() != machine.completed.has_value()) {
    corrupt("stack must be empty exactly when the strategy has completed");
  }
  for (const auto& frame : machine.stack) {
    const syntax::Strategy* strategy = doc.find(frame.strategy);
    if (strategy == nullptr) corrupt("frame refers to unknown strategy '" + frame.strategy + "'");
    if (frame.pc.empty() || syntax::statementAt(*strategy, frame.pc) == nullptr) {
      corrupt("program counter out of range in '" + frame.strategy + "'");
    }
  }
}

}  // namespace

Json valueToJson(const Value& value)
{
  if (value.isNothing()) return nullptr;
  if (value.isText()) return value.asText();
  return Json(value.asList());
}

Value valueFromJson(const Json& json)
{
  if (json.is_null()) return Value::nothing();
  if (json.is_string()) return Value::text(json.get<std::string>());
  if (json.is_array()) {
    std::vector<std::string> items;
    for (const auto& item : json) {
      if (!item.is_string()) corrupt("list elements must be strings");
      items.push_back(item.get<std::string>());
    }
    try {
      return Value::list(std::move(items));
    } catch (const Error& e) {
      corrupt(e.what());
    }
  }
  corrupt("a value must be a string, an array of strings, or null");
}

Value valueFromWire(const Json& json)
{
  if (json.is_null()) return Value::nothing();
  if (json.is_string()) return parseAnswer(json.get<std::string>());
  if (json.is_array()) {
    std::vector<std::string> items;
    for (const auto& item : json) {
      if (!item.is_string()) badRequest("list elements must be strings");
      items.push_back(item.get<std::string>());
    }
    try {
      return Value::list(std::move(items));
    } catch (const Error& e) {
      badRequest(e.what());
    }
  }
  badRequest("a value must be a string, an array of strings, or null");
}

Json inputToJson(const HumanInput& input)
{
  return std::visit(
      [](const auto& in) -> Json {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, Decision>) return Json{{"decision", in.value}};
        else if constexpr (std::is_same_v<T, Answer>) return Json{{"answer", valueToJson(in.value)}};
        else return Json{{"ack", true}};
      },
      input);
}

HumanInput inputFromJson(const Json& json)
{
  if (!json.is_object()) corrupt("input must be an object");
  if (json.contains("decision") && json.at("decision").is_boolean()) return Decision{json.at("decision").get<bool>()};
  if (json.contains("answer")) return Answer{valueFromJson(json.at("answer"))};
  if (json.contains("ack")) return Acknowledge{};
  corrupt("unrecognised input " + json.dump());
}

std::optional<HumanInput> inputFromWire(const Json& json)
{
  if (json.is_null()) return std::nullopt;
  if (!json.is_object()) badRequest("input must be a JSON object");
  int present = static_cast<int>(json.contains("decision")) + static_cast<int>(json.contains("answer")) +
                static_cast<int>(json.contains("ack"));
  if (present > 1) badRequest("input must contain only one of 'decision', 'answer' or 'ack'");
  if (static_cast<int>(json.size()) != present) badRequest("input has unknown fields");
  if (json.contains("decision")) {
    if (!json.at("decision").is_boolean()) badRequest("'decision' must be true or false");
    return Decision{json.at("decision").get<bool>()};
  }
  if (json.contains("answer")) return Answer{valueFromWire(json.at("answer"))};
  if (json.contains("ack")) {
    if (json.at("ack") != true) badRequest("'ack' must be true");
    return Acknowledge{};
  }
  return std::nullopt;
}

Json bindingsToJson(const Bindings& bindings)
{
  Json out = Json::object();
  for (const auto& [name, value] : bindings) out[name] = valueToJson(value);
  return out;
}

Bindings bindingsFromJson(const Json& json)
{
  if (!json.is_object()) corrupt("bindings must be an object");
  Bindings out;
  for (const auto& [name, value] : json.items()) out[name] = valueFromJson(value);
  return out;
}

Bindings bindingsFromWire(const Json& json)
{
  if (json.is_null()) return {};
  if (!json.is_object()) badRequest("arguments must be a JSON object");
  Bindings out;
  for (const auto& [name, value] : json.items()) out[name] = valueFromWire(value);
  return out;
}

Json locationToJson(const SourceLocation& loc)
{
  return Json{{"line", loc.line}, {"column", loc.column}, {"file", loc.file}};
}

Json eventToJson(const Event& event)
{
  Json out{{"ordinal", event.ordinal}, {"timestamp", event.timestamp}};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StartedWithArguments>) {
          out["type"] = "StartedWithArguments";
          out["root"] = p.root;
          out["args"] = bindingsToJson(p.args);
        } else if constexpr (std::is_same_v<T, AdvancedWith>) {
          out["type"] = "AdvancedWith";
          out["input"] = p.input ? inputToJson(*p.input) : Json(nullptr);
        } else if constexpr (std::is_same_v<T, SteppedBack>) {
          out["type"] = "SteppedBack";
        } else {
          out["type"] = "VariableEdited";
          out["name"] = p.name;
          out["old"] = valueToJson(p.oldValue);
          out["new"] = valueToJson(p.newValue);
        }
      },
      event.payload);
  return out;
}

Event eventFromJson(const Json& json)
{
  Event event;
  const Json& ordinal = field(json, "ordinal");
  const Json& timestamp = field(json, "timestamp");
  const Json& type = field(json, "type");
  if (!ordinal.is_number_unsigned() || !timestamp.is_number_integer() || !type.is_string()) {
    corrupt("malformed event header");
  }
  event.ordinal = ordinal.get<std::uint64_t>();
  event.timestamp = timestamp.get<Timestamp>();
  const std::string kind = type.get<std::string>();
  if (kind == "StartedWithArguments") {
    const Json& root = field(json, "root");
    if (!root.is_string()) corrupt("root must be a string");
    event.payload = StartedWithArguments{root.get<std::string>(), bindingsFromJson(field(json, "args"))};
  } else if (kind == "AdvancedWith") {
    const Json& input = field(json, "input");
    event.payload = AdvancedWith{input.is_null() ? std::nullopt : std::optional(inputFromJson(input))};
  } else if (kind == "SteppedBack") {
    event.payload = SteppedBack{};
  } else if (kind == "VariableEdited") {
    const Json& name = field(json, "name");
    if (!name.is_string()) corrupt("name must be a string");
    event.payload =
        VariableEdited{name.get<std::string>(), valueFromJson(field(json, "old")), valueFromJson(field(json, "new"))};
  } else {
    corrupt("unknown event type '" + kind + "'");
  }
  return event;
}

Json frameToJson(const Frame& frame)
{
  Json loops = Json::array();
  for (const auto& [path, cursor] : frame.loops) {
    loops.push_back(Json{{"at", pathToJson(path)}, {"listVar", cursor.listVar}, {"consumed", cursor.consumed}});
  }
  Json slot{{"kind", slotName(frame.returnSlot.kind)}};
  if (frame.returnSlot.kind == ReturnSlot::Kind::Assign) slot["target"] = frame.returnSlot.target;
  return Json{{"strategy", frame.strategy},       {"pc", pathToJson(frame.pc)},
              {"bindings", bindingsToJson(frame.bindings)}, {"referenced", frame.referenced},
              {"loops", std::move(loops)},        {"returnSlot", std::move(slot)}};
}

Frame frameFromJson(const Json& json)
{
  Frame frame;
  const Json& strategy = field(json, "strategy");
  if (!strategy.is_string()) corrupt("frame strategy must be a string");
  frame.strategy = strategy.get<std::string>();
  frame.pc = pathFromJson(field(json, "pc"));
  frame.bindings = bindingsFromJson(field(json, "bindings"));
  const Json& referenced = field(json, "referenced");
  if (!referenced.is_array()) corrupt("referenced must be an array");
  for (const auto& name : referenced) {
    if (!name.is_string()) corrupt("referenced names must be strings");
    frame.referenced.insert(name.get<std::string>());
  }
  const Json& loops = field(json, "loops");
  if (!loops.is_array()) corrupt("loops must be an array");
  for (const auto& loop : loops) {
    const Json& listVar = field(loop, "listVar");
    const Json& consumed = field(loop, "consumed");
    if (!listVar.is_string() || !consumed.is_number_unsigned()) corrupt("malformed loop cursor");
    frame.loops[pathFromJson(field(loop, "at"))] = LoopCursor{listVar.get<std::string>(), consumed.get<std::size_t>()};
  }
  const Json& slot = field(json, "returnSlot");
  const Json& kind = field(slot, "kind");
  if (kind == "discard") {
    frame.returnSlot.kind = ReturnSlot::Kind::Discard;
  } else if (kind == "assign") {
    const Json& target = field(slot, "target");
    if (!target.is_string()) corrupt("return slot target must be a string");
    frame.returnSlot = {ReturnSlot::Kind::Assign, target.get<std::string>()};
  } else if (kind == "propagate") {
    frame.returnSlot.kind = ReturnSlot::Kind::Propagate;
  } else {
    corrupt("unknown return slot kind");
  }
  return frame;
}

Json traceEntryToJson(const TraceEntry& entry)
{
  return Json{{"location", locationToJson(entry.location)},
              {"strategy", entry.strategy},
              {"kind", syntax::toString(entry.kind)},
              {"input", entry.input ? inputToJson(*entry.input) : Json(nullptr)},
              {"depth", entry.depth}};
}

std::string serializeState(const ExecutionState& state)
{
  Json history = Json::array();
  for (const auto& machine : state.history) history.push_back(machineToJson(machine));
  Json events = Json::array();
  for (const auto& event : state.events) events.push_back(eventToJson(event));

  Status st = status(state);
  Json statusJson{{"kind", toString(st.kind)}};
  if (st.kind == Status::Kind::Completed) statusJson["value"] = valueToJson(st.value);
  if (st.pending) statusJson["pending"] = toString(st.pending->kind);

  Json stack = machineToJson(state.machine).at("stack");
  Json out{{"version", kSnapshotVersion},
           {"docHash", sha256Hex(state.doc->sourceText)},
           {"source", state.doc->sourceText},
           {"sourceName", state.doc->strategies.empty() ? std::string() : state.doc->strategies.front().location.file},
           {"stack", std::move(stack)},
           {"status", std::move(statusJson)},
           {"history", std::move(history)},
           {"eventLog", std::move(events)}};
  return out.dump();
}

ExecutionState deserializeState(std::string_view bytes)
{
  Json json;
  try {
    json = Json::parse(bytes);
  } catch (const Json::exception& e) {
    corrupt(e.what());
  }
  const Json& version = field(json, "version");
  if (!version.is_number_integer()) corrupt("version must be an integer");
  if (version.get<int>() != kSnapshotVersion) {
    throw Error(ErrorCode::FormatVersionMismatch, "snapshot version " + std::to_string(version.get<int>()) +
                                                      " is not supported (expected " +
                                                      std::to_string(kSnapshotVersion) + ")");
  }
  const Json& source = field(json, "source");
  const Json& docHash = field(json, "docHash");
  if (!source.is_string() || !docHash.is_string()) corrupt("source and docHash must be strings");
  if (sha256Hex(source.get<std::string>()) != docHash.get<std::string>()) corrupt("document hash mismatch");

  std::string sourceName;
  if (json.contains("sourceName") && json.at("sourceName").is_string()) sourceName = json.at("sourceName").get<std::string>();
  auto parsed = syntax::parse(source.get<std::string>(), std::move(sourceName));
  if (!parsed.ok()) corrupt("embedded strategy source does not parse");

  ExecutionState state;
  state.doc = std::make_shared<const StrategyDoc>(std::move(*parsed.doc));

  Json machineJson{{"stack", field(json, "stack")}};
  const Json& statusJson = field(json, "status");
  if (field(statusJson, "kind") == "Completed") machineJson["completed"] = field(statusJson, "value");
  state.machine = machineFromJson(machineJson);
  checkMachine(*state.doc, state.machine);

  const Json& history = field(json, "history");
  if (!history.is_array()) corrupt("history must be an array");
  for (const auto& machine : history) {
    state.history.push_back(machineFromJson(machine));
    checkMachine(*state.doc, state.history.back());
  }
  const Json& events = field(json, "eventLog");
  if (!events.is_array()) corrupt("eventLog must be an array");
  for (const auto& event : events) {
    state.events.push_back(eventFromJson(event));
    if (state.events.back().ordinal != state.events.size()) corrupt("event ordinals are not gapless from 1");
  }
  return state;
}

}  // namespace roboto::engine
