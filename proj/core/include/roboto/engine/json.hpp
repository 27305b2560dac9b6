// JSON encodings shared by snapshots, the service and the CLI.
//
// Values encode as a string (text), an array of strings (list) or null
// (nothing). Human inputs encode as `{"decision": bool}`,
// `{"answer": value}` or `{"ack": true}`.
//
// The `*FromJson` functions are exact inverses of `*ToJson` and throw
// Error(CorruptPayload). The `*FromWire` functions accept what a client
// sends: a string answer is interpreted with `parseAnswer`, so "a, b"
// becomes a two-element list. They throw Error(BadRequest).

#pragma once

#include <json.hpp>

#include "roboto/engine/scripted.hpp"
#include "roboto/engine/state.hpp"

namespace roboto::engine {

using Json = nlohmann::json;

Json valueToJson(const Value& value);
Value valueFromJson(const Json& json);
Value valueFromWire(const Json& json);

Json inputToJson(const HumanInput& input);
HumanInput inputFromJson(const Json& json);
/// Returns nullopt for an empty object (no input).
std::optional<HumanInput> inputFromWire(const Json& json);

Json bindingsToJson(const Bindings& bindings);
Bindings bindingsFromJson(const Json& json);
Bindings bindingsFromWire(const Json& json);

Json locationToJson(const SourceLocation& loc);

Json eventToJson(const Event& event);
Event eventFromJson(const Json& json);

Json frameToJson(const Frame& frame);
Frame frameFromJson(const Json& json);

Json traceEntryToJson(const TraceEntry& entry);

}  // namespace roboto::engine
