#include "evoarena/experiment.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "evoarena/errors.hpp"
#include "evoarena/util.hpp"

namespace evoarena {

using json = nlohmann::ordered_json;

std::string to_string(ConvergenceCriterion::Kind kind) {
  return kind == ConvergenceCriterion::Kind::Threshold ? "threshold" : "stagnation";
}

ConvergenceCriterion::Kind parse_criterion_kind(const std::string& name) {
  if (name == "threshold") return ConvergenceCriterion::Kind::Threshold;
  if (name == "stagnation") return ConvergenceCriterion::Kind::Stagnation;
  throw ConfigError("unknown criterion '" + name + "' (expected threshold or stagnation)");
}

void validate(const ConvergenceCriterion& criterion) {
  if (!(criterion.theta > 0.0) || criterion.theta > 1.0) {
    throw ConfigError("theta must be in (0, 1]");
  }
  if (criterion.window < 1) throw ConfigError("window must be >= 1");
  if (criterion.epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
}

std::optional<int> detect_convergence(const EvolutionTrace& trace,
                                      const ConvergenceCriterion& criterion) {
  validate(criterion);
  if (trace.rows.empty()) throw std::invalid_argument("detect_convergence: empty trace");

  if (criterion.kind == ConvergenceCriterion::Kind::Threshold) {
    const double level = criterion.theta * trace.max_attainable;
    for (const TraceRow& row : trace.rows) {
      if (row.best_fitness >= level) return row.generation;
    }
    return std::nullopt;
  }

  const auto& rows = trace.rows;
  const std::size_t window = static_cast<std::size_t>(criterion.window);
  for (std::size_t i = 0; i + window < rows.size(); ++i) {
    double later_best = rows[i + 1].best_fitness;
    for (std::size_t j = i + 2; j <= i + window; ++j) {
      later_best = std::max(later_best, rows[j].best_fitness);
    }
    if (later_best - rows[i].best_fitness < criterion.epsilon) return rows[i].generation;
  }
  return std::nullopt;
}

SuiteConfig built_in_suite(const std::string& name, std::uint64_t master_seed, int runs) {
  SuiteConfig config;
  config.name = name;
  config.master_seed = master_seed;
  config.runs = runs;
  if (name == "lifespan") {
    config.evolution.objective = {Objective::Lifespan, true};
  } else if (name == "usability") {
    config.evolution.objective = {Objective::Usability, true};
  } else if (name == "combined") {
    config.evolution.objective = {Objective::CombinedSum, true};
  } else if (name == "unranked") {
    config.evolution.objective = {Objective::CombinedSum, true};
    config.evolution.selection = SelectionMode::UnrankedUniform;
  } else {
    throw ConfigError("unknown suite '" + name + "'");
  }
  return config;
}

const std::vector<std::string>& built_in_suite_names() {
  static const std::vector<std::string> names = {"lifespan", "usability", "combined", "unranked"};
  return names;
}

namespace {

RunRecord execute_run(const SuiteConfig& config, const Arena& arena, int run_index) {
  RunRecord record;
  record.run_index = run_index;
  record.seed = mix64(config.master_seed, static_cast<std::uint64_t>(run_index));
  record.objective = config.evolution.objective;
  record.selection = config.evolution.selection;

  EvolutionConfig evolution = config.evolution;
  evolution.seed = record.seed;
  if (config.early_stop && config.criterion.kind == ConvergenceCriterion::Kind::Threshold) {
    evolution.early_stop_fitness =
        config.criterion.theta * max_attainable_fitness(evolution.objective, config.game, arena);
  }

  try {
    const EvolutionTrace trace = evolve(evolution, config.game, arena);
    record.converged_at = detect_convergence(trace, config.criterion);
    record.best_final_fitness = trace.rows.back().best_fitness;
  } catch (const std::exception& e) {
    record.error = e.what();
    record.converged_at = std::nullopt;
    record.best_final_fitness = 0.0;
  }
  return record;
}

SuiteSummary summarize(const std::vector<RunRecord>& records) {
  SuiteSummary summary;
  std::vector<int> generations;
  for (const RunRecord& r : records) {
    if (r.converged_at) generations.push_back(*r.converged_at);
  }
  summary.convergence_fraction =
      records.empty() ? 0.0
                      : static_cast<double>(generations.size()) / static_cast<double>(records.size());
  if (!generations.empty()) {
    std::sort(generations.begin(), generations.end());
    const std::size_t mid = generations.size() / 2;
    summary.median_convergence_generation =
        generations.size() % 2 == 1
            ? static_cast<double>(generations[mid])
            : (static_cast<double>(generations[mid - 1]) + static_cast<double>(generations[mid])) /
                  2.0;
  }
  return summary;
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
  if (config.runs < 1) throw ConfigError("a suite needs at least one run");
  validate(config.criterion);
  validate(config.evolution);
  validate(config.game);
  const Arena arena = build_arena(config.arena);

  SuiteReport report;
  report.config = config;
  report.records.assign(static_cast<std::size_t>(config.runs), RunRecord{});

  unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(config.runs));

  if (jobs <= 1) {
    for (int r = 0; r < config.runs; ++r) {
      report.records[static_cast<std::size_t>(r)] = execute_run(config, arena, r + 1);
    }
  } else {
    std::atomic<int> cursor{0};
    auto worker = [&] {
      for (;;) {
        const int r = cursor.fetch_add(1);
        if (r >= config.runs) return;
        report.records[static_cast<std::size_t>(r)] = execute_run(config, arena, r + 1);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  report.summary = summarize(report.records);
  return report;
}

void write_report_csv(const SuiteReport& report, std::ostream& out) {
  const SuiteConfig& c = report.config;
  out << "# suite=" << c.name << " master-seed=" << c.master_seed << " runs=" << c.runs
      << " criterion=" << to_string(c.criterion.kind)
      << " theta=" << fmt_double(c.criterion.theta) << " window=" << c.criterion.window
      << " epsilon=" << fmt_double(c.criterion.epsilon) << '\n';
  out << "# objective=" << to_string(c.evolution.objective)
      << " mode=" << to_string(c.evolution.selection)
      << " raw-sum=" << (c.evolution.objective.normalized ? "false" : "true")
      << " population=" << c.evolution.population_size << " elite=" << c.evolution.elite_count
      << " generations=" << c.evolution.generations << " pc=" << fmt_double(c.evolution.crossover_prob)
      << " pm=" << fmt_double(c.evolution.mutation_prob) << '\n';
  out << "# steps=" << c.game.steps_max << " games=" << c.game.games_per_eval
      << " score-max=" << c.game.score_max << " mu=" << fmt_double(c.game.challenge_mu)
      << " sigma=" << fmt_double(c.game.challenge_sigma) << '\n';
  out << "run,seed,objective,mode,verdict,generation,best_fitness\n";
  for (const RunRecord& r : report.records) {
    out << r.run_index << ',' << r.seed << ',' << to_string(r.objective) << ','
        << to_string(r.selection) << ',' << (r.converged_at ? "Converged" : "NotConverging") << ',';
    if (r.converged_at) out << *r.converged_at;
    out << ',' << fmt_double(r.best_final_fitness) << '\n';
  }
}

namespace {

json selector_to_json(const ObjectiveSelector& s) {
  return json{{"kind", to_string(s)}, {"normalized", s.normalized}};
}

ObjectiveSelector selector_from_json(const json& j) {
  return parse_objective(j.at("kind").get<std::string>(), j.at("normalized").get<bool>());
}

json criterion_to_json(const ConvergenceCriterion& c) {
  return json{{"kind", to_string(c.kind)},
              {"theta", c.theta},
              {"window", c.window},
              {"epsilon", c.epsilon}};
}

ConvergenceCriterion criterion_from_json(const json& j) {
  ConvergenceCriterion c;
  c.kind = parse_criterion_kind(j.at("kind").get<std::string>());
  c.theta = j.at("theta").get<double>();
  c.window = j.at("window").get<int>();
  c.epsilon = j.at("epsilon").get<double>();
  return c;
}

json evolution_to_json(const EvolutionConfig& e) {
  json j{{"population", e.population_size},
         {"elite", e.elite_count},
         {"generations", e.generations},
         {"mode", to_string(e.selection)},
         {"objective", selector_to_json(e.objective)},
         {"pc", e.crossover_prob},
         {"pm", e.mutation_prob},
         {"seed", e.seed}};
  j["early-stop-fitness"] = e.early_stop_fitness ? json(*e.early_stop_fitness) : json(nullptr);
  return j;
}

EvolutionConfig evolution_from_json(const json& j) {
  EvolutionConfig e;
  e.population_size = j.at("population").get<int>();
  e.elite_count = j.at("elite").get<int>();
  e.generations = j.at("generations").get<int>();
  e.selection = parse_selection_mode(j.at("mode").get<std::string>());
  e.objective = selector_from_json(j.at("objective"));
  e.crossover_prob = j.at("pc").get<double>();
  e.mutation_prob = j.at("pm").get<double>();
  e.seed = j.at("seed").get<std::uint64_t>();
  const auto& stop = j.at("early-stop-fitness");
  if (!stop.is_null()) e.early_stop_fitness = stop.get<double>();
  return e;
}

json game_to_json(const GameConfig& g) {
  return json{{"steps", g.steps_max},
              {"games", g.games_per_eval},
              {"score-max", g.score_max},
              {"mu", g.challenge_mu},
              {"sigma", g.challenge_sigma}};
}

GameConfig game_from_json(const json& j) {
  GameConfig g;
  g.steps_max = j.at("steps").get<int>();
  g.games_per_eval = j.at("games").get<int>();
  g.score_max = j.at("score-max").get<int>();
  g.challenge_mu = j.at("mu").get<double>();
  g.challenge_sigma = j.at("sigma").get<double>();
  return g;
}

json arena_to_json(const ArenaConfig& a) {
  json walls = json::array();
  for (const WallRun& w : a.walls) {
    walls.push_back(json{{"x", w.x}, {"y", w.y}, {"length", w.length}, {"vertical", w.vertical}});
  }
  return json{{"width", a.width}, {"height", a.height}, {"walls", walls}};
}

ArenaConfig arena_from_json(const json& j) {
  ArenaConfig a;
  a.width = j.at("width").get<int>();
  a.height = j.at("height").get<int>();
  a.walls.clear();
  for (const auto& w : j.at("walls")) {
    a.walls.push_back({w.at("x").get<int>(), w.at("y").get<int>(), w.at("length").get<int>(),
                       w.at("vertical").get<bool>()});
  }
  return a;
}

json record_to_json(const RunRecord& r) {
  json j{{"run", r.run_index},
         {"seed", r.seed},
         {"objective", selector_to_json(r.objective)},
         {"mode", to_string(r.selection)},
         {"verdict", r.converged_at ? "Converged" : "NotConverging"}};
  j["generation"] = r.converged_at ? json(*r.converged_at) : json(nullptr);
  j["best_fitness"] = r.best_final_fitness;
  j["error"] = r.error;
  return j;
}

RunRecord record_from_json(const json& j) {
  RunRecord r;
  r.run_index = j.at("run").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.objective = selector_from_json(j.at("objective"));
  r.selection = parse_selection_mode(j.at("mode").get<std::string>());
  const auto& gen = j.at("generation");
  if (!gen.is_null()) r.converged_at = gen.get<int>();
  r.best_final_fitness = j.at("best_fitness").get<double>();
  r.error = j.at("error").get<std::string>();
  return r;
}

}  // namespace

std::string report_to_json(const SuiteReport& report) {
  const SuiteConfig& c = report.config;
  json config{{"suite", c.name},
              {"runs", c.runs},
              {"master-seed", c.master_seed},
              {"criterion", criterion_to_json(c.criterion)},
              {"evolution", evolution_to_json(c.evolution)},
              {"game", game_to_json(c.game)},
              {"arena", arena_to_json(c.arena)},
              {"early-stop", c.early_stop},
              {"jobs", c.jobs}};
  json records = json::array();
  for (const RunRecord& r : report.records) records.push_back(record_to_json(r));
  json summary{{"convergence_fraction", report.summary.convergence_fraction}};
  summary["median_convergence_generation"] = report.summary.median_convergence_generation
                                                 ? json(*report.summary.median_convergence_generation)
                                                 : json(nullptr);
  const json j{{"config", config}, {"records", records}, {"summary", summary}};
  return j.dump(2);
}

SuiteReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report json: ") + e.what());
  }
  SuiteReport report;
  const json& config = j.at("config");
  report.config.name = config.at("suite").get<std::string>();
  report.config.runs = config.at("runs").get<int>();
  report.config.master_seed = config.at("master-seed").get<std::uint64_t>();
  report.config.criterion = criterion_from_json(config.at("criterion"));
  report.config.evolution = evolution_from_json(config.at("evolution"));
  report.config.game = game_from_json(config.at("game"));
  report.config.arena = arena_from_json(config.at("arena"));
  report.config.early_stop = config.at("early-stop").get<bool>();
  report.config.jobs = config.at("jobs").get<int>();
  for (const auto& r : j.at("records")) report.records.push_back(record_from_json(r));
  const json& summary = j.at("summary");
  report.summary.convergence_fraction = summary.at("convergence_fraction").get<double>();
  const auto& median = summary.at("median_convergence_generation");
  if (!median.is_null()) report.summary.median_convergence_generation = median.get<double>();
  return report;
}

std::pair<std::filesystem::path, std::filesystem::path> write_report_files(
    const SuiteReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

  const std::string stem = report.config.name + "_" + std::to_string(report.config.master_seed);
  const auto csv_path = dir / (stem + ".csv");
  const auto json_path = dir / (stem + ".json");

  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot open " + csv_path.string() + " for writing");
  write_report_csv(report, csv);
  csv.flush();
  if (!csv.good()) throw IoError("failed writing " + csv_path.string());

  std::ofstream jsonf(json_path);
  if (!jsonf) throw IoError("cannot open " + json_path.string() + " for writing");
  jsonf << report_to_json(report) << '\n';
  jsonf.flush();
  if (!jsonf.good()) throw IoError("failed writing " + json_path.string());

  return {csv_path, json_path};
}

}  // namespace evoarena
