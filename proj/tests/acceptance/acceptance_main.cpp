// Acceptance gate for the evoarena library. Each criterion prints a single
// PASS/FAIL line; the process exits non-zero if any hard criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "evoarena/evolution.hpp"
#include "evoarena/experiment.hpp"
#include "evoarena/objectives.hpp"
#include "evoarena/util.hpp"

using namespace evoarena;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int id, std::string name) : id_(id), name_(std::move(name)), start_(Clock::now()) {}

  void require(bool condition, const std::string& detail) {
    if (!condition && failure_.empty()) failure_ = detail;
    ok_ = ok_ && condition;
  }

  void note(const std::string& detail) { notes_ += (notes_.empty() ? "" : "; ") + detail; }

  void finish() {
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_).count();
    std::cout << (ok_ ? "[PASS]" : "[FAIL]") << " criterion " << id_ << ": " << name_ << " ("
              << elapsed << " ms";
    if (!notes_.empty()) std::cout << "; " << notes_;
    if (!ok_) std::cout << "; first failure: " << failure_;
    std::cout << ")" << std::endl;
    if (!ok_) ++g_failures;
  }

 private:
  int id_;
  std::string name_;
  Clock::time_point start_;
  bool ok_ = true;
  std::string failure_;
  std::string notes_;
};

std::vector<GameResult> fixed_scores(std::vector<int> scores) {
  std::vector<GameResult> results(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) results[i].final_score = scores[i];
  return results;
}

// 1. Equation fidelity for L, C and U.
void criterion_equations() {
  Criterion c(1, "equation fidelity");
  const double mu = 15.0;
  const double sigma = 7.5;
  constexpr double kExpHalf = 0.6065306597126334;  // exp(-1/2)

  c.require(challenge(fixed_scores({15}), mu, sigma) == 1.0, "C(mu) != 1");
  c.require(std::abs(challenge(fixed_scores({15, 30}), mu, sigma) - kExpHalf) < 1e-9,
            "C(mu+sigma) off exp(-1/2)");
  c.require(std::abs(challenge(fixed_scores({15, 0}), mu, sigma) - kExpHalf) < 1e-9,
            "C(mu-sigma) off exp(-1/2)");

  SplitRng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    // Mirror-image score lists around mu give means mu+d and mu-d.
    const int n = rng.range(1, 10);
    std::vector<int> up;
    std::vector<int> down;
    for (int i = 0; i < n; ++i) {
      const int s = rng.range(-30, 60);
      up.push_back(s);
      down.push_back(30 - s);
    }
    const double high = challenge(fixed_scores(up), mu, sigma);
    const double low = challenge(fixed_scores(down), mu, sigma);
    c.require(std::abs(high - low) < 1e-12, "C not symmetric around mu");
  }

  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.range(1, 20);
    std::vector<GameResult> results(static_cast<std::size_t>(n));
    double sum_n = 0.0;
    double sum_c = 0.0;
    for (auto& r : results) {
      r.steps_survived = rng.range(0, 100);
      r.cells_visited = rng.range(1, 182);
      sum_n += r.steps_survived;
      sum_c += r.cells_visited;
    }
    c.require(std::abs(lifespan(results) - sum_n / n) < 1e-12, "L off the hand mean");
    c.require(std::abs(usability(results) - sum_c / n) < 1e-12, "U off the hand mean");
  }
  c.finish();
}

// 2. Byte-identical traces from identical configs at the default scale.
void criterion_determinism(const fs::path& dir) {
  Criterion c(2, "evolve determinism at default scale");
  EvolutionConfig evolution;  // 20 genomes, elite 10, 100 generations
  evolution.seed = 2024;
  const GameConfig game;  // 10 games x 100 steps
  const Arena arena = build_arena();

  std::string bytes[2];
  for (int i = 0; i < 2; ++i) {
    const EvolutionTrace trace = evolve(evolution, game, arena);
    std::ostringstream out;
    write_trace_csv(trace, out);
    bytes[i] = out.str();
    std::ofstream file(dir / ("determinism_" + std::to_string(i) + ".csv"), std::ios::binary);
    file << bytes[i];
  }
  c.require(!bytes[0].empty(), "empty trace");
  c.require(bytes[0] == bytes[1], "trace CSVs differ between runs");
  c.finish();
}

// 3. Result and score bounds over 1,000 random genomes.
void criterion_bounds() {
  Criterion c(3, "bounds over 1,000 random genome evaluations");
  const Arena arena = build_arena();
  const GameConfig game;
  SplitRng rng(303);
  for (int i = 0; i < 1000; ++i) {
    const Genome genome = random_genome(rng);
    const auto results = evaluate(genome, arena, game, rng.child(static_cast<std::uint64_t>(i)));
    for (const auto& r : results) {
      c.require(r.steps_survived >= 0 && r.steps_survived <= game.steps_max, "n out of range");
      c.require(r.cells_visited >= 1 && r.cells_visited <= 182, "c out of range");
      if (r.outcome == GameOutcome::Won) {
        c.require(r.final_score >= game.score_max, "won without reaching score_max");
      }
    }
    const ObjectiveScores s = compute_objectives(results, game, arena, true);
    c.require(s.lifespan >= 0.0 && s.lifespan <= game.steps_max, "L out of range");
    c.require(s.challenge > 0.0 && s.challenge <= 1.0, "C out of range");
    c.require(s.usability >= 1.0 && s.usability <= 182.0, "U out of range");
    c.require(s.combined > 0.0 && s.combined <= 3.0, "combined out of range");
  }
  c.finish();
}

// 4. pareto_front against the all-pairs brute force.
void criterion_dominance() {
  Criterion c(4, "pareto front matches brute force");
  SplitRng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.range(1, 16);
    std::vector<FitnessVector> vectors;
    for (int i = 0; i < n; ++i) {
      vectors.push_back({static_cast<double>(rng.range(0, 4)),
                         static_cast<double>(rng.range(0, 4)),
                         static_cast<double>(rng.range(0, 4))});
    }
    std::vector<std::size_t> expected;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      bool beaten = false;
      for (std::size_t j = 0; j < vectors.size() && !beaten; ++j) {
        if (i == j) continue;
        beaten = vectors[j].lifespan >= vectors[i].lifespan &&
                 vectors[j].challenge >= vectors[i].challenge &&
                 vectors[j].usability >= vectors[i].usability &&
                 (vectors[j].lifespan > vectors[i].lifespan ||
                  vectors[j].challenge > vectors[i].challenge ||
                  vectors[j].usability > vectors[i].usability);
      }
      if (!beaten) expected.push_back(i);
    }
    c.require(pareto_front(vectors) == expected, "front mismatch on trial");
  }
  c.finish();
}

// 5. Exact elitism monotonicity across 10 seeds x 100 generations.
void criterion_monotonicity() {
  Criterion c(5, "ranked best fitness is non-decreasing (10 seeds x 100 generations)");
  const Arena arena = build_arena();
  const GameConfig game;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EvolutionConfig evolution;
    evolution.seed = seed;
    const EvolutionTrace trace = evolve(evolution, game, arena);
    c.require(trace.rows.size() == 100, "trace shorter than the budget");
    for (std::size_t i = 1; i < trace.rows.size(); ++i) {
      c.require(trace.rows[i].best_fitness >= trace.rows[i - 1].best_fitness,
                "best fitness decreased at seed " + std::to_string(seed) + " generation " +
                    std::to_string(i + 1));
    }
  }
  c.finish();
}

// 6. The four suites complete in Tables-1..3 shape with mixed verdicts.
void criterion_table_shape(const fs::path& dir) {
  Criterion c(6, "suites complete with mixed verdicts in table shape");
  int converged = 0;
  int not_converged = 0;
  for (const auto& name : built_in_suite_names()) {
    const SuiteConfig config = built_in_suite(name, 42, 6);
    const SuiteReport report = run_suite(config);
    c.require(static_cast<int>(report.records.size()) == config.runs,
              name + " did not produce 6 records");
    for (const auto& record : report.records) {
      c.require(record.error.empty(), name + " run errored: " + record.error);
      if (record.converged_at) {
        ++converged;
      } else {
        ++not_converged;
      }
    }
    write_report_files(report, dir);
  }
  c.require(converged > 0, "no run converged anywhere");
  c.require(not_converged > 0, "every run converged; no hardness signal");
  c.note("converged " + std::to_string(converged) + "/24 across the four suites");
  c.finish();
}

// 7. Directional hardness report: combined vs lifespan non-convergence.
void criterion_directional_hardness() {
  Criterion c(7, "directional hardness report (expected outcome, not a gate)");
  int lifespan_nc = 0;
  int combined_nc = 0;
  const int seeds = 10;
  const int runs = 6;
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t master = 1000 + static_cast<std::uint64_t>(s);
    const SuiteReport single = run_suite(built_in_suite("lifespan", master, runs));
    const SuiteReport multi = run_suite(built_in_suite("combined", master, runs));
    for (const auto& r : single.records) lifespan_nc += r.converged_at ? 0 : 1;
    for (const auto& r : multi.records) combined_nc += r.converged_at ? 0 : 1;
  }
  const double total = static_cast<double>(seeds * runs);
  const double f_single = lifespan_nc / total;
  const double f_multi = combined_nc / total;
  c.note("non-convergence: combined " + fmt_double(f_multi) + " vs lifespan " +
         fmt_double(f_single) + " over " + std::to_string(seeds) + " master seeds; expectation " +
         (f_multi >= f_single ? "held" : "NOT held"));
  c.finish();
}

// 8. The usability metric is not degenerate for a zero-predator genome.
void criterion_usability_guard() {
  Criterion c(8, "zero-predator usability exceeds 1 on every seed");
  const Arena arena = build_arena();
  const GameConfig game;
  const Genome empty_rules;  // all-minimum genome: no predators
  double min_u = 1e9;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto results = evaluate(empty_rules, arena, game, SplitRng(seed));
    const double u = usability(results);
    min_u = std::min(min_u, u);
    c.require(u > 1.0, "U == 1 at seed " + std::to_string(seed));
  }
  c.note("minimum U over 100 seeds: " + fmt_double(min_u));
  c.finish();
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "evoarena_acceptance";
  fs::create_directories(dir);

  criterion_equations();
  criterion_determinism(dir);
  criterion_bounds();
  criterion_dominance();
  criterion_monotonicity();
  criterion_table_shape(dir);
  criterion_directional_hardness();
  criterion_usability_guard();

  if (g_failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
    return EXIT_SUCCESS;
  }
  std::cout << g_failures << " acceptance criteria failed" << std::endl;
  return EXIT_FAILURE;
}
