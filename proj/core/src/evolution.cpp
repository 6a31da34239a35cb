#include "evoarena/evolution.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "evoarena/errors.hpp"
#include "evoarena/util.hpp"

namespace evoarena {

namespace {

// Stream salts under the run's master seed.
constexpr std::uint64_t kInitSalt = 0x01;
constexpr std::uint64_t kEvalSalt = 0x02;
constexpr std::uint64_t kVariationSalt = 0x03;

}  // namespace

std::string to_string(SelectionMode mode) {
  return mode == SelectionMode::RankedTopK ? "ranked" : "unranked";
}

SelectionMode parse_selection_mode(const std::string& name) {
  if (name == "ranked") return SelectionMode::RankedTopK;
  if (name == "unranked") return SelectionMode::UnrankedUniform;
  throw ConfigError("unknown selection mode '" + name + "' (expected ranked or unranked)");
}

void validate(const EvolutionConfig& config) {
  if (config.population_size < 2) throw ConfigError("population must be >= 2");
  if (config.elite_count < 1 || config.elite_count >= config.population_size) {
    throw ConfigError("elite count must be in [1, population)");
  }
  if (config.generations < 1) throw ConfigError("generations must be >= 1");
  if (config.crossover_prob < 0.0 || config.crossover_prob > 1.0) {
    throw ConfigError("pc must be in [0, 1]");
  }
  if (config.mutation_prob < 0.0 || config.mutation_prob > 1.0) {
    throw ConfigError("pm must be in [0, 1]");
  }
}

bool dominates(const FitnessVector& a, const FitnessVector& b) {
  const bool no_worse = a.lifespan >= b.lifespan && a.challenge >= b.challenge &&
                        a.usability >= b.usability;
  const bool better = a.lifespan > b.lifespan || a.challenge > b.challenge ||
                      a.usability > b.usability;
  return no_worse && better;
}

std::vector<std::size_t> pareto_front(std::span<const FitnessVector> vectors) {
  if (vectors.empty()) throw std::invalid_argument("pareto_front: empty list");
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < vectors.size() && !dominated; ++j) {
      dominated = j != i && dominates(vectors[j], vectors[i]);
    }
    if (!dominated) front.push_back(i);
  }
  return front;
}

std::vector<std::size_t> rank_descending(std::span<const double> fitness) {
  std::vector<std::size_t> order(fitness.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
  return order;
}

namespace {

Genome breed(const std::vector<Genome>& population, std::span<const std::size_t> pool,
             const EvolutionConfig& config, SplitRng& rng) {
  const std::size_t a = rng.below(pool.size());
  std::size_t b = a;
  if (pool.size() > 1) {
    b = rng.below(pool.size() - 1);
    if (b >= a) ++b;
  }
  const Genome& first = population[pool[a]];
  const Genome& second = population[pool[b]];
  Genome child = rng.chance(config.crossover_prob) ? crossover(first, second, rng) : first;
  if (rng.chance(config.mutation_prob)) child = mutate(child, rng);
  return child;
}

}  // namespace

std::vector<Genome> next_generation(const std::vector<Genome>& population,
                                    std::span<const double> fitness,
                                    const EvolutionConfig& config, SplitRng& rng) {
  validate(config);
  if (static_cast<int>(population.size()) != config.population_size) {
    throw std::invalid_argument("next_generation: population size mismatch");
  }
  if (fitness.size() != population.size()) {
    throw std::invalid_argument("next_generation: fitness size mismatch");
  }

  std::vector<Genome> next;
  next.reserve(population.size());
  if (config.selection == SelectionMode::RankedTopK) {
    const auto order = rank_descending(fitness);
    const std::span<const std::size_t> elite(order.data(),
                                             static_cast<std::size_t>(config.elite_count));
    for (const std::size_t i : elite) next.push_back(population[i]);
    while (static_cast<int>(next.size()) < config.population_size) {
      next.push_back(breed(population, elite, config, rng));
    }
  } else {
    std::vector<std::size_t> everyone(population.size());
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});
    while (static_cast<int>(next.size()) < config.population_size) {
      next.push_back(breed(population, everyone, config, rng));
    }
  }
  return next;
}

EvolutionTrace evolve(const EvolutionConfig& config, const GameConfig& game_config,
                      const Arena& arena) {
  validate(config);
  validate(game_config);

  EvolutionTrace trace;
  trace.evolution = config;
  trace.game = game_config;
  trace.max_attainable = max_attainable_fitness(config.objective, game_config, arena);

  const SplitRng master(config.seed);
  SplitRng init_rng = master.child(kInitSalt);
  std::vector<Genome> population;
  population.reserve(static_cast<std::size_t>(config.population_size));
  for (int i = 0; i < config.population_size; ++i) {
    population.push_back(random_genome(init_rng));
  }

  // A genome's evaluation stream depends only on (seed, content hash), so an
  // unchanged genome always reproduces its fitness and caching is exact.
  std::unordered_map<Genome, ObjectiveScores, GenomeHasher> cache;
  const SplitRng eval_base = master.child(kEvalSalt);
  const SplitRng variation_base = master.child(kVariationSalt);

  std::vector<double> fitness(population.size(), 0.0);
  std::vector<ObjectiveScores> scores(population.size());
  for (int generation = 1; generation <= config.generations; ++generation) {
    for (std::size_t i = 0; i < population.size(); ++i) {
      const auto cached = cache.find(population[i]);
      if (cached != cache.end()) {
        scores[i] = cached->second;
      } else {
        const auto results =
            evaluate(population[i], arena, game_config, eval_base.child(population[i].content_hash()));
        scores[i] = compute_objectives(results, game_config, arena, config.objective.normalized);
        cache.emplace(population[i], scores[i]);
      }
      fitness[i] = scalar_fitness(scores[i], config.objective);
    }

    std::size_t best = 0;
    double mean = 0.0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
      mean += fitness[i];
      if (fitness[i] > fitness[best]) best = i;
    }
    mean /= static_cast<double>(fitness.size());
    trace.rows.push_back({generation, fitness[best], mean, population[best], scores[best]});

    if (config.early_stop_fitness && fitness[best] >= *config.early_stop_fitness) break;
    if (generation == config.generations) break;

    SplitRng variation_rng = variation_base.child(static_cast<std::uint64_t>(generation));
    population = next_generation(population, fitness, config, variation_rng);
  }
  return trace;
}

void write_trace_csv(const EvolutionTrace& trace, std::ostream& out) {
  const auto& evo = trace.evolution;
  const auto& game = trace.game;
  out << "# objective=" << to_string(evo.objective) << " mode=" << to_string(evo.selection)
      << " raw-sum=" << (evo.objective.normalized ? "false" : "true") << " seed=" << evo.seed;
  if (evo.early_stop_fitness) out << " early-stop-fitness=" << fmt_double(*evo.early_stop_fitness);
  out << '\n';
  out << "# population=" << evo.population_size << " elite=" << evo.elite_count
      << " generations=" << evo.generations << " pc=" << fmt_double(evo.crossover_prob)
      << " pm=" << fmt_double(evo.mutation_prob) << '\n';
  out << "# steps=" << game.steps_max << " games=" << game.games_per_eval
      << " score-max=" << game.score_max << " mu=" << fmt_double(game.challenge_mu)
      << " sigma=" << fmt_double(game.challenge_sigma) << '\n';
  out << "generation,best_fitness,mean_fitness,best_L,best_C,best_U,best_genome\n";
  for (const TraceRow& row : trace.rows) {
    out << row.generation << ',' << fmt_double(row.best_fitness) << ','
        << fmt_double(row.mean_fitness) << ',' << fmt_double(row.best_scores.lifespan) << ','
        << fmt_double(row.best_scores.challenge) << ',' << fmt_double(row.best_scores.usability)
        << ',' << row.best_genome.to_string(';') << '\n';
  }
}

}  // namespace evoarena
