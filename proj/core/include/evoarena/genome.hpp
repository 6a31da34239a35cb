#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "evoarena/rng.hpp"

namespace evoarena {

// The four entity classes of the game. Red/Green/Blue are the predator
// classes; the ordering below is what the gene tables are indexed by.
enum class EntityClass : int { Red = 0, Green = 1, Blue = 2, Agent = 3 };

constexpr int kPredatorClassCount = 3;
constexpr int kGeneCount = 30;

const char* class_name(EntityClass c);

// Flat gene layout. Cut points and mutation sites use these indices.
//
//   index   group              range    order
//   0..2    predator counts    [0,20]   red, green, blue
//   3..5    movement logic     [0,3]    red, green, blue
//   6..20   collision effects  [0,2]    mover-major: (R,R),(R,G),(R,B),(R,A),
//                                       (G,R),(G,G),(G,B),(G,A),
//                                       (B,R),(B,G),(B,B),(B,A),
//                                       (A,R),(A,G),(A,B)
//   21..29  score deltas       [-1,1]   (R,R),(G,G),(B,B),(A,R),(A,G),(A,B),
//                                       (G,R),(B,R),(B,G)
constexpr int kPredatorCountBase = 0;
constexpr int kMovementLogicBase = 3;
constexpr int kCollisionBase = 6;
constexpr int kScoreBase = 21;
constexpr int kCollisionPairCount = 15;
constexpr int kScorePairCount = 9;

struct GeneBounds {
  int lo;
  int hi;
  bool operator==(const GeneBounds&) const = default;
};

// Legal range of the gene at a flat index. Throws std::out_of_range.
GeneBounds gene_bounds(int index);

// Flat index of the collision gene for an ordered (mover, target) pair.
// (Agent, Agent) has no gene; throws std::invalid_argument.
int collision_pair_index(EntityClass mover, EntityClass target);

// Flat index of the scored pair covering {a, b} in either orientation, or -1
// if neither orientation is in the score table. Every pair that can actually
// collide has exactly one scored orientation.
int score_pair_index(EntityClass a, EntityClass b);

struct GeneViolation {
  int index;
  int value;
  GeneBounds bounds;
  bool operator==(const GeneViolation&) const = default;
};

using Genes = std::array<int, kGeneCount>;

// Every out-of-range gene in a candidate gene array; empty means valid.
std::vector<GeneViolation> validate(const Genes& genes);

// A complete rule set for one game: predator counts, per-class movement
// behaviour, the collision table and the score table. Instances are valid by
// construction; the variation operators preserve validity.
class Genome {
 public:
  // All-minimum genes: no predators, every table entry at its lower bound.
  Genome() = default;

  // Throws std::invalid_argument naming each out-of-range gene.
  static Genome from_genes(const Genes& genes);

  const Genes& genes() const { return genes_; }
  int gene(int index) const { return genes_.at(static_cast<std::size_t>(index)); }

  int predator_count(EntityClass predator) const;
  int movement_logic(EntityClass predator) const;
  // 0 = block, 1 = mover dies, 2 = target dies. See game.hpp.
  int collision_effect(EntityClass mover, EntityClass target) const;
  // Delta from the scored orientation of {a, b}, regardless of who moved.
  int score_delta(EntityClass a, EntityClass b) const;

  int total_predators() const;

  // Stable hash of the gene values; evaluation streams are keyed by it.
  std::uint64_t content_hash() const;

  // Flat serialization: 30 integers in layout order.
  std::string to_string(char delim = ',') const;
  static Genome parse(const std::string& text, char delim = ',');
  std::string to_json() const;  // JSON array of 30 integers
  static Genome from_json(const std::string& text);

  bool operator==(const Genome&) const = default;

 private:
  explicit Genome(const Genes& genes) : genes_(genes) {}

  Genes genes_{};
};

struct GenomeHasher {
  std::size_t operator()(const Genome& g) const {
    return static_cast<std::size_t>(g.content_hash());
  }
};

// Every gene drawn uniformly from its legal range.
Genome random_genome(SplitRng& rng);

// Single-point crossover: cut drawn uniformly from [1, 29]; the offspring
// takes genes [0, cut) from `a` and [cut, 30) from `b`.
Genome crossover(const Genome& a, const Genome& b, SplitRng& rng);
Genome crossover_at(const Genome& a, const Genome& b, int cut);

// Resamples one uniformly chosen gene from its legal range (possibly to the
// same value), so the result is within Hamming distance 1 of the input.
Genome mutate(const Genome& g, SplitRng& rng);
Genome mutate_site(const Genome& g, int site, SplitRng& rng);

}  // namespace evoarena
