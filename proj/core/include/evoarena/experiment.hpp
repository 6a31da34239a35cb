#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "evoarena/evolution.hpp"

namespace evoarena {

// When a run counts as converged. Threshold: best fitness reaches theta x
// the objective's attainable maximum. Stagnation: best fitness improves by
// less than epsilon over the following `window` generations.
struct ConvergenceCriterion {
  enum class Kind { Threshold, Stagnation };
  Kind kind = Kind::Threshold;
  double theta = 0.95;
  int window = 50;
  double epsilon = 1e-6;
  bool operator==(const ConvergenceCriterion&) const = default;
};

std::string to_string(ConvergenceCriterion::Kind kind);
ConvergenceCriterion::Kind parse_criterion_kind(const std::string& name);

// Throws ConfigError unless 0 < theta <= 1, window >= 1 and epsilon >= 0.
void validate(const ConvergenceCriterion& criterion);

// First generation (1-based) satisfying the criterion, or nullopt when none
// does within the trace. Throws std::invalid_argument on an empty trace.
std::optional<int> detect_convergence(const EvolutionTrace& trace,
                                      const ConvergenceCriterion& criterion);

struct RunRecord {
  int run_index = 0;  // 1-based, mirrors the tables' "Experiment #" column
  std::uint64_t seed = 0;
  ObjectiveSelector objective;
  SelectionMode selection = SelectionMode::RankedTopK;
  std::optional<int> converged_at;  // nullopt = not converging
  double best_final_fitness = 0.0;
  std::string error;  // non-empty when the run failed outright
  bool operator==(const RunRecord&) const = default;
};

struct SuiteSummary {
  double convergence_fraction = 0.0;
  std::optional<double> median_convergence_generation;
  bool operator==(const SuiteSummary&) const = default;
};

struct SuiteConfig {
  std::string name = "suite";
  int runs = 6;
  std::uint64_t master_seed = 1;
  ConvergenceCriterion criterion;
  EvolutionConfig evolution;  // objective/selection live here; seed is derived per run
  GameConfig game;
  ArenaConfig arena;
  // Stop threshold-criterion runs at the qualifying generation instead of
  // playing out the budget; verdicts are unchanged.
  bool early_stop = true;
  int jobs = 0;  // worker threads; 0 = hardware concurrency
  bool operator==(const SuiteConfig&) const = default;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<RunRecord> records;
  SuiteSummary summary;
  bool operator==(const SuiteReport&) const = default;
};

// The four built-in suites: "lifespan", "usability" (single objective,
// ranked), "combined" (normalized sum, ranked) and "unranked" (normalized
// sum, uniform parents). Throws ConfigError for any other name.
SuiteConfig built_in_suite(const std::string& name, std::uint64_t master_seed, int runs = 6);
const std::vector<std::string>& built_in_suite_names();

// Runs `runs` seeded evolutions (seed r = mix64(master_seed, r), r 1-based),
// applies the criterion to each trace and summarizes. Runs execute on up to
// `jobs` worker threads; the report only depends on the config. A failing
// run is recorded with its error message and the suite continues.
SuiteReport run_suite(const SuiteConfig& config);

// CSV columns: run,seed,objective,mode,verdict,generation,best_fitness.
// The generation column is empty for non-converging runs. '#'-prefixed
// header lines echo the configuration.
void write_report_csv(const SuiteReport& report, std::ostream& out);

// Lossless structured form, including the full config snapshot.
std::string report_to_json(const SuiteReport& report);
SuiteReport report_from_json(const std::string& text);

// Writes <name>_<master_seed>.csv and .json under `dir`; returns the two
// paths. Throws IoError on filesystem failure.
std::pair<std::filesystem::path, std::filesystem::path> write_report_files(
    const SuiteReport& report, const std::filesystem::path& dir);

}  // namespace evoarena
