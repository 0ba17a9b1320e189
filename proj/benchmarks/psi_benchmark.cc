#include <benchmark/benchmark.h>

#include <string>

#include "cssbkit/equilibrium.h"
#include "cssbkit/game.h"
#include "cssbkit/path.h"
#include "cssbkit/situations.h"

namespace {

using namespace cssbkit;

StageGame Majority() {
  return parse_game(R"({
    "players": ["1", "2", "3"],
    "actions": [["L", "R"], ["L", "R"], ["L", "R"]],
    "payoffs": {
      "L,L,L": ["3", "3", "3"], "L,L,R": ["2", "2", "0"],
      "L,R,L": ["2", "0", "2"], "L,R,R": ["0", "1", "1"],
      "R,L,L": ["0", "2", "2"], "R,L,R": ["1", "0", "1"],
      "R,R,L": ["1", "1", "0"], "R,R,R": ["1", "1", "1"]
    },
    "delta": "1/2"
  })");
}

StageGame Dilemma() {
  return parse_game(R"({
    "players": ["1", "2"],
    "actions": [["C", "D"], ["C", "D"]],
    "payoffs": {"C,C": ["2", "2"], "C,D": ["0", "3"],
                "D,C": ["3", "0"], "D,D": ["1", "1"]},
    "delta": "3/5"
  })");
}

void BM_Payoff(benchmark::State& state) {
  const StageGame game = Dilemma();
  const Path x = parse_path(game, "C,D;D,C;D,D | C,C;D,D;C,D;D,C");
  for (auto _ : state) {
    benchmark::DoNotOptimize(payoff(game, x, 0));
  }
}
BENCHMARK(BM_Payoff);

void BM_EnumerateUniverse(benchmark::State& state) {
  const StageGame game = Majority();
  const auto cycle = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_universe(game, 2, cycle));
  }
}
BENCHMARK(BM_EnumerateUniverse)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PsiFirstRound(benchmark::State& state) {
  const StageGame game = Majority();
  const Mode mode = state.range(0) ? Mode::kCoalitional : Mode::kNash;
  const PathSet universe = enumerate_universe(game, 2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi(game, mode, universe, universe));
  }
  state.SetItemsProcessed(state.iterations() * universe.size());
}
BENCHMARK(BM_PsiFirstRound)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FixedPoint(benchmark::State& state) {
  const StageGame game = state.range(0) ? Majority() : Dilemma();
  const PathSet universe = enumerate_universe(game, 2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fixed_point(game, Mode::kCoalitional, universe));
  }
}
BENCHMARK(BM_FixedPoint)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ConservativeDominion(benchmark::State& state) {
  const StageGame game = Majority();
  const PathSet universe = enumerate_universe(game, 1, 2);
  const PathSet sb = fixed_point(game, Mode::kNash, universe).final_set;
  const ConservativeDominion dominion(game, Mode::kCoalitional, sb);
  for (auto _ : state) {
    std::size_t dominated = 0;
    for (const Path& x : universe) dominated += dominion.find(x).has_value();
    benchmark::DoNotOptimize(dominated);
  }
  state.SetItemsProcessed(state.iterations() * universe.size());
}
BENCHMARK(BM_ConservativeDominion)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
