#pragma once

#include <memory>
#include <string>
#include <vector>

#include "reference.hpp"
#include "roboto/engine/scripted.hpp"
#include "roboto/engine/state.hpp"
#include "roboto/syntax/ast.hpp"

namespace roboto::test {

std::string corpusPath(const std::string& relative);
std::string readCorpus(const std::string& relative);
/// Parses a corpus file; throws if it has parse errors.
std::shared_ptr<const syntax::StrategyDoc> loadCorpus(const std::string& relative);
std::shared_ptr<const syntax::StrategyDoc> parseOrThrow(const std::string& text, const std::string& file = {});

/// Answers the Hanoi figures the way a careful human would: "'level' minus
/// one" gets the decremented number, "'level' greater than 1" the truth,
/// moves are acknowledged.
InputFn hanoiHuman();

engine::Bindings hanoiArgs(int level);

struct EngineRun {
  std::vector<engine::TraceEntry> steps;
  engine::Value result;
  std::size_t maxDepth = 0;
  std::vector<engine::HumanInput> script;
};

/// Drives the stepping engine one `next` at a time, asking `human` whenever
/// input is pending.
EngineRun driveEngine(std::shared_ptr<const syntax::StrategyDoc> doc, const std::string& root,
                      const engine::Bindings& args, const InputFn& human, std::size_t maxSteps = 1'000'000);

std::size_t countActionsStartingWith(const syntax::StrategyDoc& doc, const std::vector<engine::TraceEntry>& steps,
                                     const std::string& prefix);

}  // namespace roboto::test
