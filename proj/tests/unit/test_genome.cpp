#include <doctest.h>

#include <set>
#include <stdexcept>
#include <vector>

#include "evoarena/genome.hpp"
#include "evoarena/rng.hpp"

using namespace evoarena;

namespace {

Genome min_genome() {
  Genes genes{};
  for (int i = 0; i < kGeneCount; ++i) genes[i] = gene_bounds(i).lo;
  return Genome::from_genes(genes);
}

Genome max_genome() {
  Genes genes{};
  for (int i = 0; i < kGeneCount; ++i) genes[i] = gene_bounds(i).hi;
  return Genome::from_genes(genes);
}

}  // namespace

TEST_CASE("gene layout covers 30 genes in four groups") {
  CHECK(kGeneCount == 30);
  CHECK(gene_bounds(0) == GeneBounds{0, 20});
  CHECK(gene_bounds(2) == GeneBounds{0, 20});
  CHECK(gene_bounds(3) == GeneBounds{0, 3});
  CHECK(gene_bounds(5) == GeneBounds{0, 3});
  CHECK(gene_bounds(6) == GeneBounds{0, 2});
  CHECK(gene_bounds(20) == GeneBounds{0, 2});
  CHECK(gene_bounds(21) == GeneBounds{-1, 1});
  CHECK(gene_bounds(29) == GeneBounds{-1, 1});
  CHECK_THROWS_AS(gene_bounds(30), std::out_of_range);
}

TEST_CASE("collision pair indexing is mover-major with the agent block last") {
  CHECK(collision_pair_index(EntityClass::Red, EntityClass::Red) == 0);
  CHECK(collision_pair_index(EntityClass::Red, EntityClass::Agent) == 3);
  CHECK(collision_pair_index(EntityClass::Green, EntityClass::Red) == 4);
  CHECK(collision_pair_index(EntityClass::Blue, EntityClass::Agent) == 11);
  CHECK(collision_pair_index(EntityClass::Agent, EntityClass::Red) == 12);
  CHECK(collision_pair_index(EntityClass::Agent, EntityClass::Blue) == 14);
  CHECK_THROWS_AS(collision_pair_index(EntityClass::Agent, EntityClass::Agent),
                  std::invalid_argument);
}

TEST_CASE("every colliding pair has exactly one scored orientation") {
  const EntityClass all[] = {EntityClass::Red, EntityClass::Green, EntityClass::Blue,
                             EntityClass::Agent};
  for (const auto a : all) {
    for (const auto b : all) {
      if (a == EntityClass::Agent && b == EntityClass::Agent) continue;
      const int idx = score_pair_index(a, b);
      CHECK(idx >= 0);
      CHECK(idx < kScorePairCount);
      CHECK(idx == score_pair_index(b, a));
    }
  }
  // Fixed table order.
  CHECK(score_pair_index(EntityClass::Red, EntityClass::Red) == 0);
  CHECK(score_pair_index(EntityClass::Agent, EntityClass::Red) == 3);
  CHECK(score_pair_index(EntityClass::Green, EntityClass::Red) == 6);
  CHECK(score_pair_index(EntityClass::Red, EntityClass::Green) == 6);
  CHECK(score_pair_index(EntityClass::Blue, EntityClass::Green) == 8);
}

TEST_CASE("random genomes respect every gene range") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SplitRng rng(seed);
    const Genome g = random_genome(rng);
    for (int i = 0; i < kGeneCount; ++i) {
      const auto bounds = gene_bounds(i);
      CHECK(g.gene(i) >= bounds.lo);
      CHECK(g.gene(i) <= bounds.hi);
    }
    for (const auto cls : {EntityClass::Red, EntityClass::Green, EntityClass::Blue}) {
      CHECK(g.predator_count(cls) >= 0);
      CHECK(g.predator_count(cls) <= 20);
      CHECK(g.movement_logic(cls) >= 0);
      CHECK(g.movement_logic(cls) <= 3);
    }
  }
}

TEST_CASE("100 seeds give at least 99 pairwise distinct genomes") {
  std::vector<Genome> genomes;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SplitRng rng(seed);
    genomes.push_back(random_genome(rng));
  }
  int distinct = 0;
  for (std::size_t i = 0; i < genomes.size(); ++i) {
    bool duplicate = false;
    for (std::size_t j = 0; j < i; ++j) duplicate = duplicate || genomes[i] == genomes[j];
    distinct += duplicate ? 0 : 1;
  }
  CHECK(distinct >= 99);
}

TEST_CASE("random genome generation is deterministic in the seed") {
  SplitRng a(99);
  SplitRng b(99);
  CHECK(random_genome(a) == random_genome(b));
}

TEST_CASE("crossover of identical parents is the identity") {
  SplitRng rng(5);
  const Genome g = random_genome(rng);
  for (int cut = 1; cut < kGeneCount; ++cut) {
    CHECK(crossover_at(g, g, cut) == g);
  }
  SplitRng rng2(6);
  CHECK(crossover(g, g, rng2) == g);
}

TEST_CASE("forced cut at 15 splits minima and maxima") {
  const Genome child = crossover_at(min_genome(), max_genome(), 15);
  for (int i = 0; i < kGeneCount; ++i) {
    CHECK(child.gene(i) == (i < 15 ? gene_bounds(i).lo : gene_bounds(i).hi));
  }
}

TEST_CASE("crossover cut bounds are enforced") {
  const Genome g = min_genome();
  CHECK_THROWS_AS(crossover_at(g, g, 0), std::invalid_argument);
  CHECK_THROWS_AS(crossover_at(g, g, 30), std::invalid_argument);
}

TEST_CASE("every offspring gene comes from one of its parents") {
  SplitRng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const Genome a = random_genome(rng);
    const Genome b = random_genome(rng);
    const Genome child = crossover(a, b, rng);
    for (int i = 0; i < kGeneCount; ++i) {
      const bool from_parent = child.gene(i) == a.gene(i) || child.gene(i) == b.gene(i);
      CHECK(from_parent);
    }
  }
}

TEST_CASE("mutation changes at most one gene and stays in range") {
  SplitRng rng(8);
  const Genome g = random_genome(rng);
  for (int trial = 0; trial < 2000; ++trial) {
    const Genome m = mutate(g, rng);
    int changed = 0;
    for (int i = 0; i < kGeneCount; ++i) {
      if (m.gene(i) != g.gene(i)) {
        ++changed;
        const auto bounds = gene_bounds(i);
        CHECK(m.gene(i) >= bounds.lo);
        CHECK(m.gene(i) <= bounds.hi);
      }
    }
    CHECK(changed <= 1);
  }
}

TEST_CASE("mutation sites are uniform over the 30 positions") {
  // The resampled value may equal the old one, so the site is recovered by
  // replaying the documented site draw on a copy of the stream and checking
  // it against any observed change.
  SplitRng rng(9);
  const Genome g = random_genome(rng);
  std::array<int, kGeneCount> hits{};
  const int trials = 10000;
  for (int trial = 0; trial < trials; ++trial) {
    SplitRng probe = rng;
    const int site = static_cast<int>(probe.below(kGeneCount));
    const Genome m = mutate(g, rng);
    for (int i = 0; i < kGeneCount; ++i) {
      if (m.gene(i) != g.gene(i)) CHECK(i == site);
    }
    ++hits[site];
  }
  for (int i = 0; i < kGeneCount; ++i) {
    const double freq = static_cast<double>(hits[i]) / trials;
    CHECK(freq >= 1.0 / kGeneCount - 0.01);
    CHECK(freq <= 1.0 / kGeneCount + 0.01);
  }
}

TEST_CASE("variation operators are closed over valid genomes") {
  SplitRng rng(10);
  for (int trial = 0; trial < 10000; ++trial) {
    const Genome a = random_genome(rng);
    const Genome b = random_genome(rng);
    CHECK(validate(crossover(a, b, rng).genes()).empty());
    CHECK(validate(mutate(a, rng).genes()).empty());
  }
}

TEST_CASE("variation operators are deterministic in the stream") {
  SplitRng mk(11);
  const Genome a = random_genome(mk);
  const Genome b = random_genome(mk);
  SplitRng r1(12);
  SplitRng r2(12);
  CHECK(crossover(a, b, r1) == crossover(a, b, r2));
  CHECK(mutate(a, r1) == mutate(a, r2));
}

TEST_CASE("validate reports each out-of-range gene") {
  SplitRng rng(13);
  CHECK(validate(random_genome(rng).genes()).empty());

  Genes one_bad = min_genome().genes();
  one_bad[0] = 21;
  const auto violations = validate(one_bad);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].index == 0);
  CHECK(violations[0].value == 21);
  CHECK(violations[0].bounds == GeneBounds{0, 20});

  Genes two_bad = min_genome().genes();
  two_bad[4] = -1;
  two_bad[29] = 2;
  CHECK(validate(two_bad).size() == 2);

  CHECK_THROWS_AS(Genome::from_genes(one_bad), std::invalid_argument);
}

TEST_CASE("content hash separates different genomes") {
  SplitRng rng(14);
  const Genome a = random_genome(rng);
  const Genome b = random_genome(rng);
  CHECK(a.content_hash() == a.content_hash());
  CHECK(a.content_hash() != b.content_hash());
}

TEST_CASE("text round trip is lossless") {
  SplitRng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const Genome g = random_genome(rng);
    CHECK(Genome::parse(g.to_string()) == g);
    CHECK(Genome::parse(g.to_string(';'), ';') == g);
    CHECK(Genome::from_json(g.to_json()) == g);
  }
}

TEST_CASE("parse rejects malformed genome text") {
  CHECK_THROWS_AS(Genome::parse("1,2,3"), std::invalid_argument);
  CHECK_THROWS_AS(Genome::parse(min_genome().to_string() + ",0"), std::invalid_argument);
  CHECK_THROWS_AS(Genome::parse("a" + min_genome().to_string().substr(1)),
                  std::invalid_argument);
  Genes bad = min_genome().genes();
  bad[0] = 99;
  Genome ok = min_genome();
  std::string text = ok.to_string();
  text.replace(0, 1, "99");
  CHECK_THROWS_AS(Genome::parse(text), std::invalid_argument);
  CHECK_THROWS_AS(Genome::from_json("[1,2]"), std::invalid_argument);
  CHECK_THROWS_AS(Genome::from_json("{}"), std::invalid_argument);
}
