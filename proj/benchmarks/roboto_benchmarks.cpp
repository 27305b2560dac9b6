#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "roboto/engine/engine.hpp"
#include "roboto/engine/scripted.hpp"
#include "roboto/engine/snapshot.hpp"
#include "roboto/syntax/format.hpp"
#include "roboto/syntax/parser.hpp"
#include "roboto/syntax/validate.hpp"

using namespace roboto;

static void BM_ParseDebugFigure(benchmark::State& state)
{
  std::string text = test::readCorpus("debug.roboto");
  for (auto _ : state) benchmark::DoNotOptimize(syntax::parse(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseDebugFigure);

static void BM_ValidateDebugFigure(benchmark::State& state)
{
  auto doc = test::loadCorpus("debug.roboto");
  for (auto _ : state) benchmark::DoNotOptimize(syntax::validate(*doc));
}
BENCHMARK(BM_ValidateDebugFigure);

static void BM_FormatRandomDocument(benchmark::State& state)
{
  test::Rng rng(5);
  auto doc = test::randomDoc(rng);
  for (auto _ : state) benchmark::DoNotOptimize(syntax::format(doc));
}
BENCHMARK(BM_FormatRandomDocument);

static void BM_HanoiScriptedRun(benchmark::State& state)
{
  auto doc = test::loadCorpus("variants/towerOfHanoiCorrected.roboto");
  auto level = static_cast<int>(state.range(0));
  auto script = test::driveEngine(doc, "towerOfHanoiCorrected", test::hanoiArgs(level), test::hanoiHuman()).script;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine::runScripted(doc, "towerOfHanoiCorrected", test::hanoiArgs(level), script));
  }
  state.counters["inputs"] = static_cast<double>(script.size());
}
BENCHMARK(BM_HanoiScriptedRun)->Arg(4)->Arg(8);

static void BM_SnapshotRoundTrip(benchmark::State& state)
{
  auto doc = test::loadCorpus("towerOfHanoi.roboto");
  auto s = engine::start(doc, "towerOfHanoi", test::hanoiArgs(4), 0);
  auto human = test::hanoiHuman();
  for (int i = 0; i < 20 && !s.completed(); ++i) {
    std::optional<engine::HumanInput> input;
    if (auto p = engine::pendingInput(s)) input = test::inputFor(human, s, p->kind);
    s = engine::next(std::move(s), input, 0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(engine::deserializeState(engine::serializeState(s)));
}
BENCHMARK(BM_SnapshotRoundTrip);

BENCHMARK_MAIN();
