#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "saten/engine.h"
#include "saten/examples.h"

namespace saten {
namespace {

std::vector<Formula> Chain(int n) {
  std::vector<Formula> fs{Parse("p0")};
  for (int i = 0; i < n; ++i) {
    fs.push_back(Parse("p" + std::to_string(i) + "->p" + std::to_string(i + 1)));
  }
  return fs;
}

void BM_HornChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<Formula> fs = Chain(n);
  const Formula goal = Parse("p" + std::to_string(n));
  for (auto _ : state) {
    Prover prover;
    benchmark::DoNotOptimize(prover.EntailsHorn(fs, goal));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_HornChain)->RangeMultiplier(2)->Range(100, 1600)->Complexity();

void BM_GeneralChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<Formula> fs = Chain(n);
  const Formula goal = Parse("p" + std::to_string(n));
  for (auto _ : state) {
    Prover prover;
    benchmark::DoNotOptimize(prover.Entails(fs, goal));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_GeneralChain)->RangeMultiplier(2)->Range(100, 1600)->Complexity();

// Random 3-clauses over `atoms` atoms near the satisfiability threshold.
void BM_Consistency(benchmark::State& state) {
  const int atoms = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::vector<Formula> fs;
  for (int i = 0; i < atoms * 4; ++i) {
    std::string c;
    for (int k = 0; k < 3; ++k) {
      if (k) c += "|";
      if (rng() % 2) c += "-";
      c += "q" + std::to_string(rng() % atoms);
    }
    fs.push_back(Parse(c));
  }
  for (auto _ : state) {
    Prover prover;
    benchmark::DoNotOptimize(prover.IsConsistent(fs));
  }
}
BENCHMARK(BM_Consistency)->Arg(10)->Arg(20)->Arg(40);

void BM_ReviseContrast(benchmark::State& state) {
  const ExampleEntry& e = FindExample("contrast");
  StrategyConfig cfg;
  cfg.strategy = kAllStrategies[state.range(0)];
  state.SetLabel(std::string(ToString(cfg.strategy)));
  for (auto _ : state) {
    Prover prover;
    benchmark::DoNotOptimize(Revise(e.initial, e.script[0].formula,
                                    e.script[0].degree, cfg,
                                    Placement::kBottom, prover));
  }
}
BENCHMARK(BM_ReviseContrast)->DenseRange(0, 5);

void BM_ReviseTweety(benchmark::State& state) {
  const ExampleEntry& e = FindExample("tweety");
  StrategyConfig cfg;
  for (auto _ : state) {
    Prover prover;
    benchmark::DoNotOptimize(Revise(e.initial, e.script[0].formula,
                                    e.script[0].degree, cfg,
                                    Placement::kBottom, prover));
  }
}
BENCHMARK(BM_ReviseTweety);

}  // namespace
}  // namespace saten

BENCHMARK_MAIN();
