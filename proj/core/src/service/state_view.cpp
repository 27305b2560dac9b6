#include "roboto/service/state_view.hpp"

#include "roboto/engine/engine.hpp"
#include "roboto/engine/responsibility.hpp"
#include "roboto/syntax/format.hpp"

namespace roboto::service {

using engine::Json;

namespace {

Json optionalText(const std::optional<std::string>& text)
{
  return text ? Json(*text) : Json(nullptr);
}

void appendStatements(Json& out, const syntax::Strategy& strategy, const syntax::Block& block,
                      syntax::StatementPath& path, const engine::Frame* top)
{
  for (std::size_t i = 0; i < block.size(); ++i) {
    const syntax::Statement& stmt = block[i];
    path.push_back(i);
    bool current = top && top->strategy == strategy.name && top->pc == path;
    out.push_back(Json{{"strategy", strategy.name},
                       {"location", engine::locationToJson(stmt.location)},
                       {"text", syntax::formatStatementLine(stmt)},
                       {"comment", optionalText(stmt.comment)},
                       {"depth", path.size()},
                       {"kind", syntax::toString(stmt.kind())},
                       {"current", current}});
    if (const syntax::Block* inner = stmt.block()) appendStatements(out, strategy, *inner, path, top);
    path.pop_back();
  }
}

}  // namespace

Json stateView(const SessionInfo& info, const engine::ExecutionState& state)
{
  const engine::Frame* top = state.machine.stack.empty() ? nullptr : &state.machine.stack.back();
  // The first event of every session is its start event, which names the root.
  const auto& started = std::get<engine::StartedWithArguments>(state.events.front().payload);
  const syntax::Strategy& root = *state.doc->find(started.root);

  Json strategies = Json::array();
  Json statements = Json::array();
  for (const auto& strategy : state.doc->strategies) {
    strategies.push_back(Json{{"name", strategy.name},
                              {"params", strategy.params},
                              {"header", syntax::formatHeader(strategy)},
                              {"leadingComment", optionalText(strategy.leadingComment)},
                              {"location", engine::locationToJson(strategy.location)}});
    syntax::StatementPath path;
    appendStatements(statements, strategy, strategy.body, path, top);
  }

  engine::Status status = engine::status(state);
  Json statusJson{{"kind", engine::toString(status.kind)}};
  if (status.kind == engine::Status::Kind::Completed) statusJson["value"] = engine::valueToJson(status.value);

  Json pending = nullptr;
  if (status.pending) {
    pending = Json{{"kind", engine::toString(status.pending->kind)},
                   {"prompt", status.pending->prompt},
                   {"location", engine::locationToJson(status.pending->location)}};
  }

  Json variables = Json::array();
  for (const auto& [name, value] : engine::visibleVariables(state)) {
    variables.push_back(Json{{"name", name}, {"value", engine::valueToJson(value)}});
  }

  Json steps = Json::array();
  Json currentLocation = nullptr;
  Json currentStrategy = nullptr;
  if (const syntax::Statement* stmt = engine::currentStatement(state)) {
    currentLocation = engine::locationToJson(stmt->location);
    currentStrategy = engine::currentStrategy(state)->name;
    for (const auto& step : engine::responsibilitySteps(state)) {
      steps.push_back(Json{{"actor", engine::toString(step.actor)}, {"description", step.description}});
    }
  }

  return Json{{"sessionId", info.sessionId},
              {"entryId", info.entryId},
              {"rootStrategy", root.name},
              {"params", root.params},
              {"introText", optionalText(root.leadingComment)},
              {"strategies", std::move(strategies)},
              {"statements", std::move(statements)},
              {"currentLocation", std::move(currentLocation)},
              {"currentStrategy", std::move(currentStrategy)},
              {"pendingInput", std::move(pending)},
              {"visibleVariables", std::move(variables)},
              {"responsibilitySteps", std::move(steps)},
              {"canStepBack", !state.history.empty()},
              {"status", std::move(statusJson)},
              {"stackDepth", state.depth()},
              {"lastOrdinal", state.lastOrdinal()},
              {"createdAt", info.createdAt},
              {"updatedAt", info.updatedAt}};
}

}  // namespace roboto::service
