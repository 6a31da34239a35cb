#include "evoarena/game.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

#include "evoarena/errors.hpp"

namespace evoarena {

namespace {

constexpr std::array<int, 4> kDx = {1, 0, -1, 0};   // E, N, W, S
constexpr std::array<int, 4> kDy = {0, -1, 0, 1};

constexpr std::array<Heading, 4> kScanOrder = {Heading::East, Heading::North, Heading::West,
                                               Heading::South};

}  // namespace

Pos step_toward(Pos p, Heading h) {
  const int d = static_cast<int>(h);
  return {p.x + kDx[static_cast<std::size_t>(d)], p.y + kDy[static_cast<std::size_t>(d)]};
}

Heading turn_left(Heading h) { return static_cast<Heading>((static_cast<int>(h) + 1) % 4); }
Heading turn_right(Heading h) { return static_cast<Heading>((static_cast<int>(h) + 3) % 4); }
Heading reverse(Heading h) { return static_cast<Heading>((static_cast<int>(h) + 2) % 4); }

const char* heading_name(Heading h) {
  switch (h) {
    case Heading::East: return "E";
    case Heading::North: return "N";
    case Heading::West: return "W";
    case Heading::South: return "S";
  }
  return "?";
}

const char* outcome_name(GameOutcome o) {
  switch (o) {
    case GameOutcome::Won: return "won";
    case GameOutcome::TimedOut: return "timed_out";
    case GameOutcome::Died: return "died";
  }
  return "?";
}

void validate(const GameConfig& config) {
  if (config.steps_max < 1) throw ConfigError("steps must be >= 1");
  if (config.games_per_eval < 1) throw ConfigError("games must be >= 1");
  if (!(config.challenge_sigma > 0.0)) throw ConfigError("sigma must be > 0");
}

int GameState::live_predators() const {
  int n = 0;
  for (const auto& p : predators) n += p.alive ? 1 : 0;
  return n;
}

void GameState::mark_visited(Pos p) {
  auto& cell = visited_[static_cast<std::size_t>(index_of(p))];
  if (!cell) {
    cell = 1;
    ++visited_count_;
  }
}

GameState init_game(const Genome& genome, const Arena& arena, SplitRng& rng) {
  const int entities = 1 + genome.total_predators();
  if (entities > arena.free_cell_count()) {
    throw ConfigError("cannot place " + std::to_string(entities) + " entities on " +
                      std::to_string(arena.free_cell_count()) + " free cells");
  }

  GameState state;
  state.width_ = arena.width();
  state.visited_.assign(static_cast<std::size_t>(arena.cell_count()), 0);
  state.occupant_.assign(static_cast<std::size_t>(arena.cell_count()), GameState::kEmpty);

  // Partial Fisher-Yates over the row-major free cell list: cell i of the
  // shuffle goes to entity i (agent first, then reds, greens, blues).
  std::vector<Pos> cells = arena.free_cells();
  for (int i = 0; i < entities; ++i) {
    const std::size_t j =
        static_cast<std::size_t>(i) + rng.below(cells.size() - static_cast<std::size_t>(i));
    std::swap(cells[static_cast<std::size_t>(i)], cells[j]);
  }

  state.agent_pos = cells[0];
  state.set_occupant(state.agent_pos, GameState::kAgent);
  state.mark_visited(state.agent_pos);

  int next = 1;
  for (const EntityClass cls : {EntityClass::Red, EntityClass::Green, EntityClass::Blue}) {
    for (int i = 0; i < genome.predator_count(cls); ++i) {
      PredatorState predator;
      predator.cls = cls;
      predator.pos = cells[static_cast<std::size_t>(next)];
      state.set_occupant(predator.pos, static_cast<int>(state.predators.size()));
      state.predators.push_back(predator);
      ++next;
    }
  }
  for (auto& predator : state.predators) {
    predator.heading = static_cast<Heading>(rng.below(4));
  }
  return state;
}

GameState make_state(const Arena& arena, Pos agent_pos, std::vector<PredatorState> predators) {
  GameState state;
  state.width_ = arena.width();
  state.visited_.assign(static_cast<std::size_t>(arena.cell_count()), 0);
  state.occupant_.assign(static_cast<std::size_t>(arena.cell_count()), GameState::kEmpty);

  const auto place = [&](Pos p, int who) {
    if (!arena.passable(p)) {
      throw std::invalid_argument("make_state: cell (" + std::to_string(p.x) + "," +
                                  std::to_string(p.y) + ") is not passable");
    }
    if (state.occupant(p) != GameState::kEmpty) {
      throw std::invalid_argument("make_state: cell (" + std::to_string(p.x) + "," +
                                  std::to_string(p.y) + ") is occupied twice");
    }
    state.set_occupant(p, who);
  };

  place(agent_pos, GameState::kAgent);
  state.agent_pos = agent_pos;
  state.mark_visited(agent_pos);
  for (std::size_t i = 0; i < predators.size(); ++i) {
    if (predators[i].alive) place(predators[i].pos, static_cast<int>(i));
  }
  state.predators = std::move(predators);
  return state;
}

std::optional<Heading> agent_policy(const GameState& state, const Genome& genome,
                                    const Arena& arena, SplitRng& rng) {
  if (!state.agent_alive) throw std::invalid_argument("agent_policy: agent is dead");

  // Best positive agent score among adjacent predator classes.
  int best = 0;
  for (const Heading h : kScanOrder) {
    const Pos n = step_toward(state.agent_pos, h);
    if (!arena.passable(n)) continue;
    const int who = state.occupant(n);
    if (who < 0) continue;
    best = std::max(best, genome.score_delta(EntityClass::Agent,
                                             state.predators[static_cast<std::size_t>(who)].cls));
  }
  if (best > 0) {
    for (const Heading h : kScanOrder) {
      const Pos n = step_toward(state.agent_pos, h);
      if (!arena.passable(n)) continue;
      const int who = state.occupant(n);
      if (who < 0) continue;
      if (genome.score_delta(EntityClass::Agent,
                             state.predators[static_cast<std::size_t>(who)].cls) == best) {
        return h;
      }
    }
  }

  std::array<Heading, 4> open{};
  std::size_t open_count = 0;
  for (const Heading h : kScanOrder) {
    if (arena.passable(step_toward(state.agent_pos, h))) open[open_count++] = h;
  }
  if (open_count == 0) return std::nullopt;
  return open[static_cast<std::size_t>(rng.below(open_count))];
}

PredatorDecision predator_move(const PredatorState& predator, const Genome& genome,
                               const Arena& arena, SplitRng& rng) {
  if (!predator.alive) throw std::invalid_argument("predator_move: predator is dead");

  PredatorDecision decision;
  decision.heading = predator.heading;
  Pos ahead = step_toward(predator.pos, predator.heading);
  if (arena.passable(ahead)) {
    decision.target = ahead;
    return decision;
  }

  switch (genome.movement_logic(predator.cls)) {
    case 0: decision.heading = turn_left(predator.heading); break;
    case 1: decision.heading = turn_right(predator.heading); break;
    case 2:
      decision.heading =
          rng.below(2) == 0 ? turn_left(predator.heading) : turn_right(predator.heading);
      break;
    default: decision.heading = reverse(predator.heading); break;
  }
  ahead = step_toward(predator.pos, decision.heading);
  if (arena.passable(ahead)) decision.target = ahead;
  return decision;
}

CollisionOutcome resolve_collision(EntityClass mover, EntityClass target, const Genome& genome) {
  CollisionOutcome outcome;
  outcome.effect = static_cast<CollisionEffect>(genome.collision_effect(mover, target));
  outcome.score_delta = genome.score_delta(mover, target);
  return outcome;
}

namespace {

// True when the game is decided before the step completes: remaining movers
// stay put. Won beats Died when one collision triggers both.
bool decided(const GameState& state, const GameConfig& config) {
  return state.score >= config.score_max || !state.agent_alive;
}

void kill_predator(GameState& state, int index) {
  auto& p = state.predators[static_cast<std::size_t>(index)];
  p.alive = false;
  state.set_occupant(p.pos, GameState::kEmpty);
}

void move_agent(GameState& state, Pos to) {
  state.set_occupant(state.agent_pos, GameState::kEmpty);
  state.agent_pos = to;
  state.set_occupant(to, GameState::kAgent);
  state.mark_visited(to);
}

void move_predator(GameState& state, int index, Pos to) {
  auto& p = state.predators[static_cast<std::size_t>(index)];
  state.set_occupant(p.pos, GameState::kEmpty);
  p.pos = to;
  state.set_occupant(to, index);
}

void agent_phase(GameState& state, const Genome& genome, const Arena& arena, SplitRng& rng) {
  const auto move = agent_policy(state, genome, arena, rng);
  if (!move) return;
  const Pos target = step_toward(state.agent_pos, *move);
  const int who = state.occupant(target);
  if (who == GameState::kEmpty) {
    move_agent(state, target);
    return;
  }
  const EntityClass target_cls = state.predators[static_cast<std::size_t>(who)].cls;
  const CollisionOutcome hit = resolve_collision(EntityClass::Agent, target_cls, genome);
  state.score += hit.score_delta;
  switch (hit.effect) {
    case CollisionEffect::Block: break;
    case CollisionEffect::MoverDies:
      state.agent_alive = false;
      state.set_occupant(state.agent_pos, GameState::kEmpty);
      break;
    case CollisionEffect::TargetDies:
      kill_predator(state, who);
      move_agent(state, target);
      break;
  }
}

void predator_phase(GameState& state, const Genome& genome, const Arena& arena,
                    const GameConfig& config, SplitRng& rng) {
  for (int i = 0; i < static_cast<int>(state.predators.size()); ++i) {
    auto& predator = state.predators[static_cast<std::size_t>(i)];
    if (!predator.alive) continue;
    const PredatorDecision decision = predator_move(predator, genome, arena, rng);
    predator.heading = decision.heading;
    if (!decision.target) continue;
    const int who = state.occupant(*decision.target);
    if (who == GameState::kEmpty) {
      move_predator(state, i, *decision.target);
      continue;
    }
    const EntityClass target_cls =
        who == GameState::kAgent ? EntityClass::Agent
                                 : state.predators[static_cast<std::size_t>(who)].cls;
    const CollisionOutcome hit = resolve_collision(predator.cls, target_cls, genome);
    state.score += hit.score_delta;
    switch (hit.effect) {
      case CollisionEffect::Block: break;
      case CollisionEffect::MoverDies: kill_predator(state, i); break;
      case CollisionEffect::TargetDies:
        if (who == GameState::kAgent) {
          state.agent_alive = false;
        } else {
          kill_predator(state, who);
        }
        move_predator(state, i, *decision.target);
        break;
    }
    if (decided(state, config)) return;
  }
}

}  // namespace

bool step(GameState& state, const Genome& genome, const Arena& arena, const GameConfig& config,
          SplitRng& rng) {
  if (state.terminal) throw std::invalid_argument("step: game is already terminal");

  agent_phase(state, genome, arena, rng);
  if (!decided(state, config)) {
    predator_phase(state, genome, arena, config, rng);
  }

  state.t += 1;
  if (state.score >= config.score_max) {
    state.terminal = true;
    state.outcome = GameOutcome::Won;
  } else if (!state.agent_alive) {
    state.terminal = true;
    state.outcome = GameOutcome::Died;
  } else if (state.t >= config.steps_max) {
    state.terminal = true;
    state.outcome = GameOutcome::TimedOut;
  }
  return state.terminal;
}

GameResult play_game(const Genome& genome, const Arena& arena, const GameConfig& config,
                     SplitRng rng, const StepObserver& observer) {
  validate(config);
  GameState state = init_game(genome, arena, rng);
  if (observer) observer(state);
  while (!state.terminal) {
    step(state, genome, arena, config, rng);
    if (observer) observer(state);
  }
  return {state.t, state.score, state.visited_count(), state.outcome};
}

std::vector<GameResult> evaluate(const Genome& genome, const Arena& arena,
                                 const GameConfig& config, const SplitRng& rng) {
  validate(config);
  std::vector<GameResult> results;
  results.reserve(static_cast<std::size_t>(config.games_per_eval));
  for (int i = 0; i < config.games_per_eval; ++i) {
    results.push_back(play_game(genome, arena, config, rng.child(static_cast<std::uint64_t>(i))));
  }
  return results;
}

std::string render_ascii(const GameState& state, const Arena& arena) {
  std::ostringstream out;
  for (int y = 0; y < arena.height(); ++y) {
    for (int x = 0; x < arena.width(); ++x) {
      const Pos p{x, y};
      char c = '.';
      if (arena.is_wall(p)) {
        c = '#';
      } else {
        const int who = state.occupant(p);
        if (who == GameState::kAgent) {
          c = 'A';
        } else if (who >= 0) {
          switch (state.predators[static_cast<std::size_t>(who)].cls) {
            case EntityClass::Red: c = 'r'; break;
            case EntityClass::Green: c = 'g'; break;
            case EntityClass::Blue: c = 'b'; break;
            case EntityClass::Agent: break;
          }
        }
      }
      out << c;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace evoarena
