#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "evoarena/errors.hpp"
#include "evoarena/experiment.hpp"
#include "evoarena/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace evoarena;

namespace {

// Exit codes: 0 ok, 2 configuration, 3 runtime, 4 I/O.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitIo = 4;

// Config-file entries use exactly the flag names. A key is applied only when
// the flag was not passed on the command line.
struct Binding {
  std::string key;
  CLI::Option* option;
  std::function<void(const json&)> apply;
};

class Bindings {
 public:
  template <typename T>
  CLI::Option* bind(CLI::App* cmd, const std::string& flag, T& var, const std::string& help) {
    CLI::Option* option = cmd->add_option("--" + flag, var, help);
    entries_.push_back({flag, option, [&var](const json& v) { var = v.get<T>(); }});
    return option;
  }

  CLI::Option* bind_flag(CLI::App* cmd, const std::string& flag, bool& var,
                         const std::string& help) {
    CLI::Option* option = cmd->add_flag("--" + flag + ",!--no-" + flag, var, help);
    entries_.push_back({flag, option, [&var](const json& v) { var = v.get<bool>(); }});
    return option;
  }

  // A key may be bound on several subcommands (only the active one can have
  // been passed). An explicit flag anywhere wins; otherwise the value is
  // applied to every binding of the key.
  void apply_config(const json& config) {
    for (const auto& [key, value] : config.items()) {
      std::vector<const Binding*> matches;
      bool explicit_flag = false;
      for (const auto& b : entries_) {
        if (b.key != key) continue;
        matches.push_back(&b);
        explicit_flag = explicit_flag || b.option->count() > 0;
      }
      if (matches.empty()) throw ConfigError("unknown config key '" + key + "'");
      if (explicit_flag) continue;
      for (const Binding* b : matches) {
        try {
          b->apply(value);
        } catch (const json::exception&) {
          throw ConfigError("config key '" + key + "' has the wrong type");
        }
      }
    }
  }

  bool set_anywhere(const std::string& key, const json& config) const {
    for (const auto& b : entries_) {
      if (b.key == key && b.option->count() > 0) return true;
    }
    return config.contains(key);
  }

 private:
  std::vector<Binding> entries_;
};

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
}

// Everything both evolve and suite need to assemble core configs.
struct RunSettings {
  // game
  int steps = 100;
  int games = 10;
  int score_max = 30;
  double mu = 15.0;
  double sigma = 7.5;
  // evolution
  int population = 20;
  int elite = 10;
  int generations = 100;
  double pc = 0.5;
  double pm = 0.5;
  // criterion / early stop
  std::string criterion = "threshold";
  double theta = 0.95;
  int window = 50;
  double epsilon = 1e-6;
  // misc
  std::string out = "runs";
  int jobs = 0;
};

void bind_run_settings(Bindings& bindings, CLI::App* cmd, RunSettings& s) {
  bindings.bind(cmd, "steps", s.steps, "Steps per game");
  bindings.bind(cmd, "games", s.games, "Games averaged per evaluation");
  bindings.bind(cmd, "score-max", s.score_max, "Score that wins a game");
  bindings.bind(cmd, "mu", s.mu, "Challenge target mean score (default score-max/2)");
  bindings.bind(cmd, "sigma", s.sigma, "Challenge score spread (default score-max/4)");
  bindings.bind(cmd, "population", s.population, "Population size");
  bindings.bind(cmd, "elite", s.elite, "Elite count for ranked selection");
  bindings.bind(cmd, "generations", s.generations, "Generation budget");
  bindings.bind(cmd, "pc", s.pc, "Crossover probability");
  bindings.bind(cmd, "pm", s.pm, "Mutation probability");
  bindings.bind(cmd, "out", s.out, "Output directory");
  bindings.bind(cmd, "jobs", s.jobs, "Worker threads (0 = all cores)");
}

void finish_game_config(const Bindings& bindings, const json& config, RunSettings& s,
                        GameConfig& game) {
  game.steps_max = s.steps;
  game.games_per_eval = s.games;
  game.score_max = s.score_max;
  game.challenge_mu = bindings.set_anywhere("mu", config) ? s.mu : s.score_max / 2.0;
  game.challenge_sigma = bindings.set_anywhere("sigma", config) ? s.sigma : s.score_max / 4.0;
  validate(game);
}

void fill_evolution_config(const RunSettings& s, EvolutionConfig& evolution) {
  evolution.population_size = s.population;
  evolution.elite_count = s.elite;
  evolution.generations = s.generations;
  evolution.crossover_prob = s.pc;
  evolution.mutation_prob = s.pm;
  validate(evolution);
}

ConvergenceCriterion make_criterion(const RunSettings& s) {
  ConvergenceCriterion criterion;
  criterion.kind = parse_criterion_kind(s.criterion);
  criterion.theta = s.theta;
  criterion.window = s.window;
  criterion.epsilon = s.epsilon;
  validate(criterion);
  return criterion;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out.good()) throw IoError("failed writing " + path.string());
}

std::string convergence_cell(const RunRecord& record) {
  if (!record.converged_at) return "Not Converging";
  return *record.converged_at == 1 ? "1 Iteration"
                                   : std::to_string(*record.converged_at) + " Iterations";
}

void print_report(const SuiteReport& report) {
  std::cout << "Suite " << report.config.name << " (master seed " << report.config.master_seed
            << ")\n";
  std::cout << "Experiment #\tConvergence Time\n";
  for (const auto& record : report.records) {
    std::cout << record.run_index << "\t\t" << convergence_cell(record);
    if (!record.error.empty()) std::cout << "  [error: " << record.error << "]";
    std::cout << '\n';
  }
  std::cout << "converged " << fmt_double(report.summary.convergence_fraction * 100.0) << "%";
  if (report.summary.median_convergence_generation) {
    std::cout << ", median generation " << fmt_double(*report.summary.median_convergence_generation);
  }
  std::cout << "\n\n";
}

int run_evolve(const Bindings& bindings, const json& config, RunSettings& s,
               const std::string& objective_name, bool raw_sum, const std::string& mode_name,
               std::uint64_t seed, bool early_stop) {
  GameConfig game;
  finish_game_config(bindings, config, s, game);

  EvolutionConfig evolution;
  evolution.objective = parse_objective(objective_name, !raw_sum);
  evolution.selection = parse_selection_mode(mode_name);
  evolution.seed = seed;
  fill_evolution_config(s, evolution);

  const Arena arena = build_arena();
  if (early_stop) {
    evolution.early_stop_fitness =
        s.theta * max_attainable_fitness(evolution.objective, game, arena);
  }

  const EvolutionTrace trace = evolve(evolution, game, arena);

  std::ostringstream csv;
  write_trace_csv(trace, csv);
  const fs::path path = fs::path(s.out) / ("trace_" + to_string(evolution.objective) + "_" +
                                           to_string(evolution.selection) + "_" +
                                           std::to_string(seed) + ".csv");
  write_text_file(path, csv.str());

  const TraceRow& last = trace.rows.back();
  std::cout << "objective " << to_string(evolution.objective) << ", mode "
            << to_string(evolution.selection) << ", seed " << seed << '\n';
  std::cout << "generations run: " << trace.rows.size() << " of " << evolution.generations
            << '\n';
  std::cout << "best fitness: " << fmt_double(last.best_fitness) << " (L="
            << fmt_double(last.best_scores.lifespan) << " C="
            << fmt_double(last.best_scores.challenge) << " U="
            << fmt_double(last.best_scores.usability) << ")\n";
  std::cout << "trace: " << path.string() << '\n';
  return kExitOk;
}

int run_suites(const Bindings& bindings, const json& config, RunSettings& s,
               std::vector<std::string> suites, int runs, std::uint64_t master_seed,
               bool early_stop) {
  if (suites.empty()) suites = {"lifespan", "usability", "combined"};
  if (suites.size() == 1 && suites[0] == "all") suites = built_in_suite_names();

  GameConfig game;
  finish_game_config(bindings, config, s, game);
  const ConvergenceCriterion criterion = make_criterion(s);

  for (const auto& name : suites) {
    SuiteConfig suite = built_in_suite(name, master_seed, runs);
    suite.criterion = criterion;
    suite.game = game;
    suite.early_stop = early_stop;
    suite.jobs = s.jobs;
    const ObjectiveSelector objective = suite.evolution.objective;
    const SelectionMode selection = suite.evolution.selection;
    fill_evolution_config(s, suite.evolution);
    suite.evolution.objective = objective;
    suite.evolution.selection = selection;

    const SuiteReport report = run_suite(suite);
    const auto [csv_path, json_path] = write_report_files(report, s.out);
    print_report(report);
    std::cout << "report: " << csv_path.string() << ", " << json_path.string() << "\n\n";
  }
  return kExitOk;
}

Genome load_genome_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read genome file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) throw ConfigError("genome file " + path + " is empty");
  const auto end = text.find_last_not_of(" \t\r\n");
  text = text.substr(begin, end - begin + 1);
  try {
    if (text.front() == '[') return Genome::from_json(text);
    if (text.find(';') != std::string::npos && text.find(',') == std::string::npos) {
      return Genome::parse(text, ';');
    }
    return Genome::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("genome file " + path + ": " + e.what());
  }
}

int run_replay(const Bindings& bindings, const json& config, RunSettings& s,
               const std::string& genome_path, std::uint64_t seed, bool render) {
  GameConfig game;
  finish_game_config(bindings, config, s, game);
  const Genome genome = load_genome_file(genome_path);
  const Arena arena = build_arena();

  std::cout << "replaying " << genome_path << " with seed " << seed << '\n';
  const GameResult result = play_game(genome, arena, game, SplitRng(seed),
                                      [&](const GameState& state) {
                                        std::cout << "t=" << state.t << " agent=("
                                                  << state.agent_pos.x << ','
                                                  << state.agent_pos.y << ") score="
                                                  << state.score << " predators="
                                                  << state.live_predators() << '\n';
                                        if (render) std::cout << render_ascii(state, arena);
                                      });
  std::cout << "outcome: " << outcome_name(result.outcome) << " after "
            << result.steps_survived << " steps, score " << result.final_score << ", "
            << result.cells_visited << " cells visited\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evoarena: evolve prey-predator game rules and measure convergence hardness"};
  app.require_subcommand(1);

  Bindings bindings;
  RunSettings settings;
  std::string config_path;

  std::string objective_name = "combined";
  bool raw_sum = false;
  std::string mode_name = "ranked";
  std::uint64_t seed = 0;
  bool evolve_early_stop = false;

  std::vector<std::string> suites;
  int runs = 6;
  std::uint64_t master_seed = 1;
  bool suite_early_stop = true;

  std::string genome_path;
  bool render = false;

  CLI::App* evolve_cmd = app.add_subcommand("evolve", "Run one evolution and write its trace CSV");
  evolve_cmd->add_option("--config", config_path, "JSON config file (keys match flag names)");
  bind_run_settings(bindings, evolve_cmd, settings);
  bindings.bind(evolve_cmd, "objective", objective_name,
                "Fitness: life, challenge, usability or combined");
  bindings.bind_flag(evolve_cmd, "raw-sum", raw_sum, "Combine objectives without normalization");
  bindings.bind(evolve_cmd, "mode", mode_name, "Selection: ranked or unranked");
  bindings.bind(evolve_cmd, "seed", seed, "Run seed");
  bindings.bind_flag(evolve_cmd, "early-stop", evolve_early_stop,
                     "Stop once best fitness reaches theta x maximum");
  bindings.bind(evolve_cmd, "theta", settings.theta, "Threshold fraction of attainable fitness");

  CLI::App* suite_cmd =
      app.add_subcommand("suite", "Run experiment suites and write CSV/JSON reports");
  suite_cmd->add_option("--config", config_path, "JSON config file (keys match flag names)");
  bind_run_settings(bindings, suite_cmd, settings);
  bindings.bind(suite_cmd, "suite", suites,
                "Suites to run: lifespan, usability, combined, unranked or all "
                "(default: the first three)");
  bindings.bind(suite_cmd, "runs", runs, "Runs per suite");
  bindings.bind(suite_cmd, "master-seed", master_seed, "Master seed; run seeds derive from it");
  bindings.bind(suite_cmd, "criterion", settings.criterion,
                "Convergence criterion: threshold or stagnation");
  bindings.bind(suite_cmd, "theta", settings.theta, "Threshold fraction of attainable fitness");
  bindings.bind(suite_cmd, "window", settings.window, "Stagnation window in generations");
  bindings.bind(suite_cmd, "epsilon", settings.epsilon, "Stagnation improvement floor");
  bindings.bind_flag(suite_cmd, "early-stop", suite_early_stop,
                     "Stop threshold runs at the qualifying generation");

  CLI::App* replay_cmd =
      app.add_subcommand("replay", "Play one game from a genome file and print the step log");
  replay_cmd->add_option("--config", config_path, "JSON config file (keys match flag names)");
  bind_run_settings(bindings, replay_cmd, settings);
  bindings.bind(replay_cmd, "genome", genome_path, "Genome file: CSV row or JSON array")
      ->required();
  bindings.bind(replay_cmd, "seed", seed, "Game seed");
  bindings.bind_flag(replay_cmd, "render", render, "Render the grid after every step");

  try {
    app.parse(argc, argv);

    json config = json::object();
    if (!config_path.empty()) config = load_config_file(config_path);
    if (!config.is_object()) throw ConfigError("config file must hold a JSON object");
    bindings.apply_config(config);

    if (evolve_cmd->parsed()) {
      return run_evolve(bindings, config, settings, objective_name, raw_sum, mode_name, seed,
                        evolve_early_stop);
    }
    if (suite_cmd->parsed()) {
      return run_suites(bindings, config, settings, suites, runs, master_seed, suite_early_stop);
    }
    return run_replay(bindings, config, settings, genome_path, seed, render);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
