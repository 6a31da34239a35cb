#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "evoarena/arena.hpp"
#include "evoarena/genome.hpp"
#include "evoarena/rng.hpp"

namespace evoarena {

// Compass headings in agent scan order. Turning left is +1 mod 4 (east ->
// north), right is +3, reverse is +2. North is toward row 0.
enum class Heading : int { East = 0, North = 1, West = 2, South = 3 };

Pos step_toward(Pos p, Heading h);
Heading turn_left(Heading h);
Heading turn_right(Heading h);
Heading reverse(Heading h);
const char* heading_name(Heading h);

struct GameConfig {
  int steps_max = 100;      // game length cap
  int games_per_eval = 10;  // games averaged per genome evaluation
  int score_max = 30;       // reaching this score wins the game
  double challenge_mu = 15.0;    // target mean score, defaults to score_max / 2
  double challenge_sigma = 7.5;  // score spread tolerance, defaults to score_max / 4
  bool operator==(const GameConfig&) const = default;
};

// Throws ConfigError unless steps_max >= 1, games_per_eval >= 1 and sigma > 0.
void validate(const GameConfig& config);

struct PredatorState {
  EntityClass cls = EntityClass::Red;
  Pos pos;
  Heading heading = Heading::East;
  bool alive = true;
};

enum class GameOutcome { Won, TimedOut, Died };
const char* outcome_name(GameOutcome o);

struct GameState {
  int t = 0;
  Pos agent_pos;
  bool agent_alive = true;
  int score = 0;
  // All reds (by placement order), then greens, then blues. This is also the
  // order predators act within a step.
  std::vector<PredatorState> predators;
  bool terminal = false;
  GameOutcome outcome = GameOutcome::TimedOut;  // meaningful once terminal

  int live_predators() const;
  bool visited(Pos p) const { return visited_[static_cast<std::size_t>(index_of(p))] != 0; }
  int visited_count() const { return visited_count_; }

  // Occupancy bookkeeping, derived from the fields above. The mutators are
  // for the engine; tests and callers only need the queries.
  static constexpr int kEmpty = -1;
  static constexpr int kAgent = -2;
  int occupant(Pos p) const { return occupant_[static_cast<std::size_t>(index_of(p))]; }
  int index_of(Pos p) const { return p.y * width_ + p.x; }
  void mark_visited(Pos p);
  void set_occupant(Pos p, int who) { occupant_[static_cast<std::size_t>(index_of(p))] = who; }

 private:
  friend GameState init_game(const Genome&, const Arena&, SplitRng&);
  friend GameState make_state(const Arena&, Pos, std::vector<PredatorState>);

  int width_ = 0;
  std::vector<std::uint8_t> visited_;
  int visited_count_ = 0;
  std::vector<int> occupant_;
};

struct GameResult {
  int steps_survived = 0;  // n: value of t when the game ended
  int final_score = 0;     // x
  int cells_visited = 0;   // c: distinct cells the agent occupied
  GameOutcome outcome = GameOutcome::TimedOut;
  bool operator==(const GameResult&) const = default;
};

// Places the agent and each predator on distinct free cells chosen uniformly
// at random (agent first, then reds, greens, blues), gives every predator a
// uniform random heading, and marks the agent's start cell visited.
// Throws ConfigError when 1 + total predators exceeds the free cell count.
GameState init_game(const Genome& genome, const Arena& arena, SplitRng& rng);

// State with explicit placements, for replay debugging and tests. All cells
// must be passable and distinct; the stored predator order is the order they
// act in. Throws std::invalid_argument on a bad placement.
GameState make_state(const Arena& arena, Pos agent_pos, std::vector<PredatorState> predators);

// Agent move selection. Scans E, N, W, S for adjacent predators; if the best
// score_delta(agent, class) among them is positive, returns the first
// neighbor in scan order holding a predator of a best-scoring class.
// Otherwise a uniformly random passable neighbor, or nullopt (stay) when
// every neighbor is a wall or out of bounds.
std::optional<Heading> agent_policy(const GameState& state, const Genome& genome,
                                    const Arena& arena, SplitRng& rng);

struct PredatorDecision {
  Heading heading = Heading::East;   // heading after any turn
  std::optional<Pos> target;         // nullopt = stay put
};

// Predators run straight until a wall or the grid edge blocks the cell
// ahead, then turn once per their class's movement gene: 0 = left, 1 =
// right, 2 = random left/right, 3 = reverse. If the cell ahead under the new
// heading is blocked too, the predator stays (keeping the new heading).
// Other entities never trigger a turn; walking into one is a collision.
PredatorDecision predator_move(const PredatorState& predator, const Genome& genome,
                               const Arena& arena, SplitRng& rng);

enum class CollisionEffect : int { Block = 0, MoverDies = 1, TargetDies = 2 };

struct CollisionOutcome {
  CollisionEffect effect = CollisionEffect::Block;
  int score_delta = 0;
  bool operator==(const CollisionOutcome&) const = default;
};

// Effect comes from the collision gene of the ordered (mover, target) pair;
// the score delta from the scored orientation of the pair, whichever party
// moved. Every collision updates the single game score, predator-predator
// ones included.
CollisionOutcome resolve_collision(EntityClass mover, EntityClass target, const Genome& genome);

// Advances one step: the agent acts first, then every live predator in
// stored order. A collision happens when a mover's target cell is occupied;
// Block cancels the move, MoverDies removes the mover, TargetDies removes
// the occupant and completes the move. The step ends early the moment the
// score reaches score_max or the agent dies; remaining movers stay put that
// step. Each step closes with t += 1 and the terminal check: Won when score
// >= score_max, else Died when the agent is dead, else TimedOut when t ==
// steps_max. Returns the terminal flag.
// Throws std::invalid_argument when called on a terminal state.
bool step(GameState& state, const Genome& genome, const Arena& arena, const GameConfig& config,
          SplitRng& rng);

using StepObserver = std::function<void(const GameState&)>;

// init_game + step until terminal. The observer, when given, sees the state
// after placement and after every step.
GameResult play_game(const Genome& genome, const Arena& arena, const GameConfig& config,
                     SplitRng rng, const StepObserver& observer = nullptr);

// games_per_eval independent games; game i runs on rng.child(i), so results
// do not depend on evaluation order.
std::vector<GameResult> evaluate(const Genome& genome, const Arena& arena,
                                 const GameConfig& config, const SplitRng& rng);

// Debug view: '#' wall, 'A' agent, 'r'/'g'/'b' predators, '.' free.
std::string render_ascii(const GameState& state, const Arena& arena);

}  // namespace evoarena
