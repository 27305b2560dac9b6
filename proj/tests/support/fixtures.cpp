#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "roboto/engine/engine.hpp"
#include "roboto/syntax/format.hpp"
#include "roboto/syntax/parser.hpp"

namespace roboto::test {

using namespace syntax;

std::string corpusPath(const std::string& relative)
{
  return std::string(ROBOTO_CORPUS_DIR) + "/" + relative;
}

std::string readCorpus(const std::string& relative)
{
  std::ifstream in(corpusPath(relative), std::ios::binary);
  if (!in) throw std::runtime_error("missing corpus file " + relative);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::shared_ptr<const StrategyDoc> parseOrThrow(const std::string& text, const std::string& file)
{
  auto parsed = parse(text, file);
  if (!parsed.ok()) {
    std::string message = "parse failed:";
    for (const auto& d : parsed.diagnostics) message += "\n" + formatDiagnostic(d);
    throw std::runtime_error(message);
  }
  return std::make_shared<const StrategyDoc>(std::move(*parsed.doc));
}

std::shared_ptr<const StrategyDoc> loadCorpus(const std::string& relative)
{
  return parseOrThrow(readCorpus(relative), relative);
}

namespace {

int levelOf(const engine::Bindings& bindings)
{
  return std::stoi(bindings.at("level").asText());
}

}  // namespace

InputFn hanoiHuman()
{
  return [](engine::InputKind kind, const Statement& stmt, const engine::Bindings& bindings) -> engine::HumanInput {
    switch (kind) {
      case engine::InputKind::QueryAnswer:
        return engine::Answer{engine::Value::text(std::to_string(levelOf(bindings) - 1))};
      case engine::InputKind::ConditionDecision: {
        std::string line = formatStatementLine(stmt);
        if (line.find("greater than 1") == std::string::npos) throw std::logic_error("unexpected condition " + line);
        return engine::Decision{levelOf(bindings) > 1};
      }
      default:
        return engine::Acknowledge{};
    }
  };
}

engine::Bindings hanoiArgs(int level)
{
  return {{"level", engine::Value::text(std::to_string(level))},
          {"source", engine::Value::text("A")},
          {"target", engine::Value::text("C")},
          {"auxiliary", engine::Value::text("B")}};
}

EngineRun driveEngine(std::shared_ptr<const StrategyDoc> doc, const std::string& root, const engine::Bindings& args,
                      const InputFn& human, std::size_t maxSteps)
{
  EngineRun run;
  engine::ExecutionState state = engine::start(std::move(doc), root, args, 0);
  while (!state.completed()) {
    if (run.steps.size() >= maxSteps) throw std::runtime_error("engine step budget exhausted");
    const Statement* stmt = engine::currentStatement(state);
    engine::TraceEntry entry{stmt->location, state.machine.stack.back().strategy, stmt->kind(), std::nullopt,
                             state.depth()};
    run.maxDepth = std::max(run.maxDepth, state.depth());
    if (auto pending = engine::pendingInput(state)) {
      entry.input = human(pending->kind, *stmt, state.machine.stack.back().bindings);
      run.script.push_back(*entry.input);
    }
    state = engine::next(std::move(state), entry.input, 0);
    run.steps.push_back(std::move(entry));
  }
  run.result = *state.machine.completed;
  return run;
}

std::size_t countActionsStartingWith(const StrategyDoc& doc, const std::vector<engine::TraceEntry>& steps,
                                     const std::string& prefix)
{
  std::size_t count = 0;
  for (const auto& step : steps) {
    if (step.kind != StatementKind::Action) continue;
    const Strategy* strategy = doc.find(step.strategy);
    forEachStatement(strategy->body, [&](const Statement& stmt, int) {
      if (stmt.location == step.location && formatStatementLine(stmt).rfind(prefix, 0) == 0) ++count;
    });
  }
  return count;
}

}  // namespace roboto::test
