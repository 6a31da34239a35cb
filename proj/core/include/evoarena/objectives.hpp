#pragma once

#include <span>
#include <string>

#include "evoarena/arena.hpp"
#include "evoarena/game.hpp"

namespace evoarena {

// L: mean steps survived across the games. In [0, steps_max].
double lifespan(std::span<const GameResult> results);

// C = exp(-((x - mu) / sigma)^2 / 2) where x is the mean final score across
// the games. Peaks at 1 when the mean score hits mu; always strictly
// positive (underflow is clamped to the smallest normal double).
// Throws ConfigError when sigma <= 0.
double challenge(std::span<const GameResult> results, double mu, double sigma);

// U: mean count of distinct cells the agent visited per game. In
// [1, free_cell_count].
double usability(std::span<const GameResult> results);

struct ObjectiveScores {
  double lifespan = 0.0;
  double challenge = 0.0;
  double usability = 0.0;
  double combined = 0.0;
  bool operator==(const ObjectiveScores&) const = default;
};

// Normalized: L/steps_max + C + U/free_cells, each addend in [0, 1].
// Raw: plain L + C + U (the usability term dwarfs the others; kept for runs
// that want the unscaled sum).
double combined_sum(const ObjectiveScores& scores, const GameConfig& config, const Arena& arena,
                    bool normalized);

// All three objectives plus the combined sum for one evaluation's games.
ObjectiveScores compute_objectives(std::span<const GameResult> results, const GameConfig& config,
                                   const Arena& arena, bool normalized_sum);

enum class Objective { Lifespan, Challenge, Usability, CombinedSum };

struct ObjectiveSelector {
  Objective kind = Objective::CombinedSum;
  bool normalized = true;  // only meaningful for CombinedSum
  bool operator==(const ObjectiveSelector&) const = default;
};

// Canonical names: lifespan, challenge, usability, combined.
std::string to_string(const ObjectiveSelector& selector);
ObjectiveSelector parse_objective(const std::string& name, bool normalized_sum = true);

double scalar_fitness(const ObjectiveScores& scores, const ObjectiveSelector& selector);

// Fitness ceiling of the selected objective: steps_max for lifespan, 1 for
// challenge, free_cell_count for usability, 3 for the normalized sum and
// steps_max + 1 + free_cell_count for the raw one.
double max_attainable_fitness(const ObjectiveSelector& selector, const GameConfig& config,
                              const Arena& arena);

}  // namespace evoarena
