#include "evoarena/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "evoarena/errors.hpp"

namespace evoarena {

namespace {

void require_nonempty(std::span<const GameResult> results, const char* what) {
  if (results.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty result list");
  }
}

}  // namespace

double lifespan(std::span<const GameResult> results) {
  require_nonempty(results, "lifespan");
  double sum = 0.0;
  for (const auto& r : results) sum += r.steps_survived;
  return sum / static_cast<double>(results.size());
}

double challenge(std::span<const GameResult> results, double mu, double sigma) {
  require_nonempty(results, "challenge");
  if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
  double sum = 0.0;
  for (const auto& r : results) sum += r.final_score;
  const double x = sum / static_cast<double>(results.size());
  const double z = (x - mu) / sigma;
  // Wildly off-target scores underflow the Gaussian; keep C strictly positive.
  return std::max(std::exp(-0.5 * z * z), std::numeric_limits<double>::min());
}

double usability(std::span<const GameResult> results) {
  require_nonempty(results, "usability");
  double sum = 0.0;
  for (const auto& r : results) sum += r.cells_visited;
  return sum / static_cast<double>(results.size());
}

double combined_sum(const ObjectiveScores& scores, const GameConfig& config, const Arena& arena,
                    bool normalized) {
  if (!normalized) return scores.lifespan + scores.challenge + scores.usability;
  return scores.lifespan / static_cast<double>(config.steps_max) + scores.challenge +
         scores.usability / static_cast<double>(arena.free_cell_count());
}

ObjectiveScores compute_objectives(std::span<const GameResult> results, const GameConfig& config,
                                   const Arena& arena, bool normalized_sum) {
  ObjectiveScores scores;
  scores.lifespan = lifespan(results);
  scores.challenge = challenge(results, config.challenge_mu, config.challenge_sigma);
  scores.usability = usability(results);
  scores.combined = combined_sum(scores, config, arena, normalized_sum);
  return scores;
}

std::string to_string(const ObjectiveSelector& selector) {
  switch (selector.kind) {
    case Objective::Lifespan: return "lifespan";
    case Objective::Challenge: return "challenge";
    case Objective::Usability: return "usability";
    case Objective::CombinedSum: return "combined";
  }
  return "?";
}

ObjectiveSelector parse_objective(const std::string& name, bool normalized_sum) {
  ObjectiveSelector selector;
  selector.normalized = normalized_sum;
  if (name == "life" || name == "lifespan") {
    selector.kind = Objective::Lifespan;
  } else if (name == "challenge") {
    selector.kind = Objective::Challenge;
  } else if (name == "usability") {
    selector.kind = Objective::Usability;
  } else if (name == "combined") {
    selector.kind = Objective::CombinedSum;
  } else {
    throw ConfigError("unknown objective '" + name +
                      "' (expected life, challenge, usability or combined)");
  }
  return selector;
}

double scalar_fitness(const ObjectiveScores& scores, const ObjectiveSelector& selector) {
  switch (selector.kind) {
    case Objective::Lifespan: return scores.lifespan;
    case Objective::Challenge: return scores.challenge;
    case Objective::Usability: return scores.usability;
    case Objective::CombinedSum: return scores.combined;
  }
  return scores.combined;
}

double max_attainable_fitness(const ObjectiveSelector& selector, const GameConfig& config,
                              const Arena& arena) {
  switch (selector.kind) {
    case Objective::Lifespan: return static_cast<double>(config.steps_max);
    case Objective::Challenge: return 1.0;
    case Objective::Usability: return static_cast<double>(arena.free_cell_count());
    case Objective::CombinedSum:
      return selector.normalized
                 ? 3.0
                 : static_cast<double>(config.steps_max) + 1.0 +
                       static_cast<double>(arena.free_cell_count());
  }
  return 1.0;
}

}  // namespace evoarena
