#include <benchmark/benchmark.h>

#include <vector>

#include "evoarena/evolution.hpp"
#include "evoarena/game.hpp"

using namespace evoarena;

namespace {

void BM_PlayGame(benchmark::State& state) {
  const Arena arena = build_arena();
  const GameConfig config;
  SplitRng mk(1);
  const Genome genome = random_genome(mk);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(play_game(genome, arena, config, SplitRng(seed++)));
  }
}
BENCHMARK(BM_PlayGame);

void BM_Evaluate(benchmark::State& state) {
  const Arena arena = build_arena();
  const GameConfig config;
  SplitRng mk(2);
  const Genome genome = random_genome(mk);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(genome, arena, config, SplitRng(seed++)));
  }
}
BENCHMARK(BM_Evaluate);

void BM_NextGeneration(benchmark::State& state) {
  SplitRng mk(3);
  std::vector<Genome> population;
  std::vector<double> fitness;
  for (int i = 0; i < 20; ++i) {
    population.push_back(random_genome(mk));
    fitness.push_back(static_cast<double>(i % 7));
  }
  const EvolutionConfig config;
  SplitRng rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(next_generation(population, fitness, config, rng));
  }
}
BENCHMARK(BM_NextGeneration);

void BM_ParetoFront(benchmark::State& state) {
  SplitRng rng(5);
  std::vector<FitnessVector> vectors;
  for (int i = 0; i < state.range(0); ++i) {
    vectors.push_back({rng.unit() * 100.0, rng.unit(), rng.unit() * 182.0});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(pareto_front(vectors));
  }
}
BENCHMARK(BM_ParetoFront)->Arg(16)->Arg(64)->Arg(256);

void BM_EvolveGeneration(benchmark::State& state) {
  const Arena arena = build_arena();
  GameConfig game;
  game.games_per_eval = 10;
  EvolutionConfig config;
  config.generations = 1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    config.seed = seed++;
    benchmark::DoNotOptimize(evolve(config, game, arena));
  }
}
BENCHMARK(BM_EvolveGeneration);

}  // namespace

BENCHMARK_MAIN();
