#include "evoarena/genome.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace evoarena {

namespace {

constexpr std::pair<EntityClass, EntityClass> kScoredPairs[kScorePairCount] = {
    {EntityClass::Red, EntityClass::Red},     {EntityClass::Green, EntityClass::Green},
    {EntityClass::Blue, EntityClass::Blue},   {EntityClass::Agent, EntityClass::Red},
    {EntityClass::Agent, EntityClass::Green}, {EntityClass::Agent, EntityClass::Blue},
    {EntityClass::Green, EntityClass::Red},   {EntityClass::Blue, EntityClass::Red},
    {EntityClass::Blue, EntityClass::Green},
};

int predator_index(EntityClass c) {
  const int i = static_cast<int>(c);
  if (i < 0 || i >= kPredatorClassCount) {
    throw std::invalid_argument("not a predator class");
  }
  return i;
}

}  // namespace

const char* class_name(EntityClass c) {
  switch (c) {
    case EntityClass::Red: return "red";
    case EntityClass::Green: return "green";
    case EntityClass::Blue: return "blue";
    case EntityClass::Agent: return "agent";
  }
  return "?";
}

GeneBounds gene_bounds(int index) {
  if (index < 0 || index >= kGeneCount) {
    throw std::out_of_range("gene index out of range");
  }
  if (index < kMovementLogicBase) return {0, 20};
  if (index < kCollisionBase) return {0, 3};
  if (index < kScoreBase) return {0, 2};
  return {-1, 1};
}

int collision_pair_index(EntityClass mover, EntityClass target) {
  const int m = static_cast<int>(mover);
  const int t = static_cast<int>(target);
  if (m == 3 && t == 3) {
    throw std::invalid_argument("no collision gene for (agent, agent)");
  }
  return m < 3 ? m * 4 + t : 12 + t;
}

int score_pair_index(EntityClass a, EntityClass b) {
  for (int i = 0; i < kScorePairCount; ++i) {
    if ((kScoredPairs[i].first == a && kScoredPairs[i].second == b) ||
        (kScoredPairs[i].first == b && kScoredPairs[i].second == a)) {
      return i;
    }
  }
  return -1;
}

std::vector<GeneViolation> validate(const Genes& genes) {
  std::vector<GeneViolation> violations;
  for (int i = 0; i < kGeneCount; ++i) {
    const GeneBounds bounds = gene_bounds(i);
    const int v = genes[static_cast<std::size_t>(i)];
    if (v < bounds.lo || v > bounds.hi) {
      violations.push_back({i, v, bounds});
    }
  }
  return violations;
}

Genome Genome::from_genes(const Genes& genes) {
  const auto violations = validate(genes);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid genome:";
    for (const auto& v : violations) {
      msg << " gene[" << v.index << "]=" << v.value << " outside [" << v.bounds.lo << ","
          << v.bounds.hi << "]";
    }
    throw std::invalid_argument(msg.str());
  }
  return Genome(genes);
}

int Genome::predator_count(EntityClass predator) const {
  return genes_[static_cast<std::size_t>(kPredatorCountBase + predator_index(predator))];
}

int Genome::movement_logic(EntityClass predator) const {
  return genes_[static_cast<std::size_t>(kMovementLogicBase + predator_index(predator))];
}

int Genome::collision_effect(EntityClass mover, EntityClass target) const {
  return genes_[static_cast<std::size_t>(kCollisionBase + collision_pair_index(mover, target))];
}

int Genome::score_delta(EntityClass a, EntityClass b) const {
  const int idx = score_pair_index(a, b);
  return idx < 0 ? 0 : genes_[static_cast<std::size_t>(kScoreBase + idx)];
}

int Genome::total_predators() const {
  return genes_[0] + genes_[1] + genes_[2];
}

std::uint64_t Genome::content_hash() const {
  std::uint64_t h = 0x9d8f3c1b5a7e62f4ULL;
  for (const int v : genes_) {
    h = mix64(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(v) + 2));
  }
  return h;
}

std::string Genome::to_string(char delim) const {
  std::ostringstream out;
  for (int i = 0; i < kGeneCount; ++i) {
    if (i > 0) out << delim;
    out << genes_[static_cast<std::size_t>(i)];
  }
  return out.str();
}

Genome Genome::parse(const std::string& text, char delim) {
  Genes genes{};
  std::istringstream in(text);
  std::string field;
  int count = 0;
  while (std::getline(in, field, delim)) {
    if (count >= kGeneCount) {
      throw std::invalid_argument("genome text has more than 30 fields");
    }
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(field, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("genome field '" + field + "' is not an integer");
    }
    while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
    if (used != field.size()) {
      throw std::invalid_argument("genome field '" + field + "' is not an integer");
    }
    genes[static_cast<std::size_t>(count++)] = value;
  }
  if (count != kGeneCount) {
    throw std::invalid_argument("genome text has " + std::to_string(count) +
                                " fields, expected 30");
  }
  return from_genes(genes);
}

std::string Genome::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const int v : genes_) arr.push_back(v);
  return arr.dump();
}

Genome Genome::from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("genome json: ") + e.what());
  }
  if (!arr.is_array() || arr.size() != kGeneCount) {
    throw std::invalid_argument("genome json must be an array of 30 integers");
  }
  Genes genes{};
  for (int i = 0; i < kGeneCount; ++i) {
    const auto& item = arr[static_cast<std::size_t>(i)];
    if (!item.is_number_integer()) {
      throw std::invalid_argument("genome json must be an array of 30 integers");
    }
    genes[static_cast<std::size_t>(i)] = item.get<int>();
  }
  return from_genes(genes);
}

Genome random_genome(SplitRng& rng) {
  Genes genes{};
  for (int i = 0; i < kGeneCount; ++i) {
    const GeneBounds bounds = gene_bounds(i);
    genes[static_cast<std::size_t>(i)] = rng.range(bounds.lo, bounds.hi);
  }
  return Genome::from_genes(genes);
}

Genome crossover_at(const Genome& a, const Genome& b, int cut) {
  if (cut < 1 || cut >= kGeneCount) {
    throw std::invalid_argument("crossover cut must be in [1, 29]");
  }
  Genes genes{};
  for (int i = 0; i < kGeneCount; ++i) {
    genes[static_cast<std::size_t>(i)] = (i < cut ? a : b).gene(i);
  }
  return Genome::from_genes(genes);
}

Genome crossover(const Genome& a, const Genome& b, SplitRng& rng) {
  return crossover_at(a, b, rng.range(1, kGeneCount - 1));
}

Genome mutate_site(const Genome& g, int site, SplitRng& rng) {
  const GeneBounds bounds = gene_bounds(site);
  Genes genes = g.genes();
  genes[static_cast<std::size_t>(site)] = rng.range(bounds.lo, bounds.hi);
  return Genome::from_genes(genes);
}

Genome mutate(const Genome& g, SplitRng& rng) {
  const int site = static_cast<int>(rng.below(kGeneCount));
  return mutate_site(g, site, rng);
}

}  // namespace evoarena
