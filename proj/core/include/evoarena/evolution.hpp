#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evoarena/arena.hpp"
#include "evoarena/game.hpp"
#include "evoarena/genome.hpp"
#include "evoarena/objectives.hpp"

namespace evoarena {

// RankedTopK: the elite_count fittest genomes survive and breed.
// UnrankedUniform: parents are drawn uniformly from the whole population and
// every slot is replaced, so dominated solutions reproduce too.
enum class SelectionMode { RankedTopK, UnrankedUniform };

std::string to_string(SelectionMode mode);
SelectionMode parse_selection_mode(const std::string& name);

struct EvolutionConfig {
  int population_size = 20;
  int elite_count = 10;
  int generations = 100;
  SelectionMode selection = SelectionMode::RankedTopK;
  ObjectiveSelector objective;
  double crossover_prob = 0.5;
  double mutation_prob = 0.5;
  std::uint64_t seed = 0;
  // When set, the run stops at the first generation whose best fitness
  // reaches this level (leaving the trace truncated there).
  std::optional<double> early_stop_fitness;
  bool operator==(const EvolutionConfig&) const = default;
};

// Throws ConfigError unless 0 < elite_count < population_size,
// generations >= 1 and both probabilities are in [0, 1].
void validate(const EvolutionConfig& config);

// (L, C, U) triple for dominance comparison; all objectives maximized.
struct FitnessVector {
  double lifespan = 0.0;
  double challenge = 0.0;
  double usability = 0.0;
  bool operator==(const FitnessVector&) const = default;
};

// a dominates b: no worse in every coordinate, strictly better in one.
bool dominates(const FitnessVector& a, const FitnessVector& b);

// Indices of the vectors no other vector dominates, ascending.
// Throws std::invalid_argument on an empty list.
std::vector<std::size_t> pareto_front(std::span<const FitnessVector> vectors);

// Indices sorted by fitness descending; ties keep ascending index order.
std::vector<std::size_t> rank_descending(std::span<const double> fitness);

struct TraceRow {
  int generation = 0;  // 1-based
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  Genome best_genome;
  ObjectiveScores best_scores;
  bool operator==(const TraceRow&) const = default;
};

struct EvolutionTrace {
  EvolutionConfig evolution;
  GameConfig game;
  double max_attainable = 0.0;  // fitness ceiling of the active objective
  std::vector<TraceRow> rows;
  bool operator==(const EvolutionTrace&) const = default;
};

// One generational turnover. RankedTopK keeps the elite unchanged and fills
// the rest with offspring bred from elite parents; UnrankedUniform rebuilds
// every slot from parents drawn across the whole population. Each offspring
// crosses two distinct parents with probability crossover_prob (otherwise
// copies the first) and then mutates with probability mutation_prob.
// Throws std::invalid_argument on a population/fitness size mismatch.
std::vector<Genome> next_generation(const std::vector<Genome>& population,
                                    std::span<const double> fitness,
                                    const EvolutionConfig& config, SplitRng& rng);

// Full generational loop: seeds the population, evaluates every genome
// (games_per_eval games on a stream derived from (seed, genome hash), so
// re-evaluating an unchanged genome reproduces its fitness exactly), records
// one trace row per generation and breeds the next one.
EvolutionTrace evolve(const EvolutionConfig& config, const GameConfig& game_config,
                      const Arena& arena);

// Columns: generation,best_fitness,mean_fitness,best_L,best_C,best_U,
// best_genome (30 semicolon-separated integers). A '#'-prefixed header
// echoes the full effective configuration.
void write_trace_csv(const EvolutionTrace& trace, std::ostream& out);

}  // namespace evoarena
