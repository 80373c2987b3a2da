// winprob: command-line pipeline for in-game win-probability estimation.
//
// Subcommands: simulate, ingest, fit-priors, build-grid, fit-weights,
// evaluate, predict. All diagnostics go to stderr; data goes to the
// requested output files (or stdout where documented). Exit codes: 0 on
// success, 1 on input or validation errors, 2 on internal errors.

#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "winprob/winprob.hpp"

namespace {

using namespace winprob;

void print_warnings(const Warnings& warnings) {
  for (const std::string& warning : warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (!token.empty()) tokens.push_back(token);
  }
  return tokens;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> values;
  for (const std::string& token : split_tokens(text)) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InputError(std::string("malformed ") + what + " entry '" + token + "'");
    }
  }
  return values;
}

WeightFamily parse_family_flag(const std::string& text) {
  const auto family = store::parse_weight_family(text);
  if (!family) {
    throw InputError("unknown weight family '" + text + "' (expected b1, b2 or b3)");
  }
  return *family;
}

PriorTable load_priors(const std::string& spec) {
  if (spec.empty() || spec == "default") return default_prior_table();
  return store::read_prior_table(spec);
}

std::vector<GameRecord> load_games(const std::string& path, Warnings* warnings) {
  auto in = csv::open_input(path);
  ParsedPlays parsed = parse_plays(in, path);
  if (warnings) {
    warnings->insert(warnings->end(), parsed.warnings.begin(), parsed.warnings.end());
  }
  return games_from_plays(parsed, warnings);
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  int n_games = 100;
  std::uint64_t seed = 1;
  double home_strength = 0.0;
  double possession_rate = 1.0 / 18;
  std::string points;
  std::string out;
  std::string pregame_out;
  int mc_replicates = 20000;
  unsigned threads = 0;
};

int run_simulate(const SimulateArgs& args) {
  SimConfig config;
  config.n_games = args.n_games;
  config.seed = args.seed;
  config.home_strength = args.home_strength;
  config.possession_rate = args.possession_rate;
  if (!args.points.empty()) {
    const std::vector<double> points = parse_double_list(args.points, "points");
    if (points.size() != config.point_distribution.size()) {
      throw InputError("--points expects 5 probabilities (0..4 points)");
    }
    std::copy(points.begin(), points.end(), config.point_distribution.begin());
  }
  config.validate();
  store::ensure_distinct_paths({args.out, args.pregame_out});

  SimResult result = simulate_games(config, args.threads);
  for (const std::string& game_id : result.tie_log) {
    std::cerr << "note: game " << game_id
              << " ended regulation tied; outcome drawn by coin flip\n";
  }
  store::write_plays(result.games, args.out);

  if (!args.pregame_out.empty()) {
    // Shared start state, so one Monte Carlo estimate serves every game.
    double p = true_win_prob(config, 0, 0, args.mc_replicates,
                             substream_seed(config.seed, 0x70726567ULL));
    p = std::clamp(p, 1e-6, 1.0 - 1e-6);
    std::vector<std::pair<std::string, double>> rows;
    rows.reserve(result.games.size());
    for (const GameRecord& game : result.games) rows.emplace_back(game.game_id, p);
    store::write_pregame(rows, args.pregame_out);
  }
  return 0;
}

// --- ingest -----------------------------------------------------------------

struct IngestArgs {
  std::string plays;
  std::string out;
};

int run_ingest(const IngestArgs& args) {
  Warnings warnings;
  const std::vector<GameRecord> games = load_games(args.plays, &warnings);
  print_warnings(warnings);
  store::write_plays(games, args.out);
  std::cerr << "ingested " << games.size() << " games\n";
  return 0;
}

// --- fit-priors -------------------------------------------------------------

struct FitPriorsArgs {
  std::string survey;
  std::string fallback = "default";
  std::string out;
};

int run_fit_priors(const FitPriorsArgs& args) {
  auto in = csv::open_input(args.survey);
  const std::vector<SurveyResponse> responses = parse_survey(in, args.survey);
  const PriorTable fallback = load_priors(args.fallback);
  Warnings warnings;
  const PriorTable table = build_prior_table(group_survey(responses), fallback, &warnings);
  print_warnings(warnings);
  store::write_prior_table(table, args.out);
  return 0;
}

// --- build-grid -------------------------------------------------------------

struct BuildGridArgs {
  std::string games;
  std::string priors = "default";
  std::string kind = "bayes";
  std::string out;
  unsigned threads = 0;
};

int run_build_grid(const BuildGridArgs& args) {
  Warnings warnings;
  const std::vector<GameRecord> games = load_games(args.games, &warnings);
  print_warnings(warnings);

  WindowSpec spec;
  if (args.kind == "bayes") {
    const PriorTable priors = load_priors(args.priors);
    store::write_grid(build_bayes_grid(games, spec, priors, args.threads), args.out);
  } else if (args.kind == "mle") {
    store::write_grid(build_mle_grid(games, spec, args.threads), args.out);
  } else {
    throw InputError("unknown grid kind '" + args.kind + "' (expected bayes or mle)");
  }
  return 0;
}

// --- fit-weights ------------------------------------------------------------

struct FitWeightsArgs {
  std::string family = "b3";
  std::string train;
  std::string pregame;
  std::string priors = "default";
  std::string grid;
  std::string out;
  std::string report;
  std::string init;
  int max_iterations = 400;
  double tolerance = 1e-10;
  int restarts = 2;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

int run_fit_weights(const FitWeightsArgs& args) {
  store::ensure_distinct_paths({args.out, args.report});
  Warnings warnings;
  std::vector<GameRecord> games = load_games(args.train, &warnings);
  auto pregame_in = csv::open_input(args.pregame);
  attach_pregame(games, parse_pregame(pregame_in, &warnings, args.pregame));
  print_warnings(warnings);

  const WinProbGrid bayes =
      args.grid.empty()
          ? build_bayes_grid(games, WindowSpec{}, load_priors(args.priors), args.threads)
          : store::read_grid(args.grid, GridKind::kBayes);

  FitConfig config;
  config.family = parse_family_flag(args.family);
  if (!args.init.empty()) {
    config.initial_coefficients = parse_double_list(args.init, "init");
  }
  config.max_iterations = args.max_iterations;
  config.simplex_tolerance = args.tolerance;
  config.restarts = args.restarts;
  config.seed = args.seed;

  const FitResult result = fit_weights(config, games, bayes, args.threads);
  store::write_weight_model(result.model, args.out);
  if (!args.report.empty()) store::write_fit_report(result, args.report);
  std::cerr << "fit " << to_string(result.model.family) << ": brier="
            << result.brier << " iterations=" << result.iterations
            << (result.converged ? "" : " (did not converge)") << "\n";
  return 0;
}

// --- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
  std::string games;
  std::string models = "dyn,adj";
  std::string grid;
  std::string mle_grid;
  std::string priors = "default";
  std::string weights;
  std::string pregame;
  std::string external;
  std::string checkpoints = "24,12,6,3,1";
  std::string out;
  unsigned threads = 0;
};

int run_evaluate(const EvaluateArgs& args) {
  Warnings warnings;
  std::vector<GameRecord> games = load_games(args.games, &warnings);

  const std::vector<std::string> models = split_tokens(args.models);
  if (models.empty()) throw InputError("--models lists no models");

  const bool needs_bayes =
      std::find(models.begin(), models.end(), "dyn") != models.end() ||
      std::find(models.begin(), models.end(), "adj") != models.end();

  std::optional<WinProbGrid> bayes;
  if (needs_bayes) {
    if (!args.grid.empty()) {
      bayes = store::read_grid(args.grid, GridKind::kBayes);
    } else {
      bayes = build_bayes_grid(games, WindowSpec{}, load_priors(args.priors),
                               args.threads);
    }
  }
  std::optional<WinProbGrid> mle;
  if (std::find(models.begin(), models.end(), "mle") != models.end()) {
    if (!args.mle_grid.empty()) {
      mle = store::read_grid(args.mle_grid, GridKind::kMle);
    } else {
      mle = build_mle_grid(games, WindowSpec{}, args.threads);
    }
  }

  std::optional<WeightModel> model;
  if (std::find(models.begin(), models.end(), "adj") != models.end()) {
    if (args.weights.empty()) throw InputError("model 'adj' requires --weights");
    if (args.pregame.empty()) throw InputError("model 'adj' requires --pregame");
    model = store::read_weight_model(args.weights);
    auto pregame_in = csv::open_input(args.pregame);
    attach_pregame(games, parse_pregame(pregame_in, &warnings, args.pregame));
  }

  std::optional<ExternalTrajectories> external;
  if (std::find(models.begin(), models.end(), "external") != models.end()) {
    if (args.external.empty()) throw InputError("model 'external' requires --external");
    auto external_in = csv::open_input(args.external);
    external = parse_external_trajectory(external_in, &warnings, args.external);
  }
  print_warnings(warnings);

  std::vector<Checkpoint> checkpoints;
  for (const std::string& token : split_tokens(args.checkpoints)) {
    try {
      checkpoints.push_back({std::stoi(token)});
    } catch (const std::exception&) {
      throw InputError("malformed checkpoint '" + token + "'");
    }
    if (!valid_clock(checkpoints.back().elapsed())) {
      throw InputError("checkpoint '" + token + "' lies outside regulation");
    }
  }

  std::vector<LabeledSource> entries;
  for (const std::string& token : models) {
    if (token == "dyn") {
      entries.push_back({"dyn-bayes", grid_source(*bayes)});
    } else if (token == "adj") {
      entries.push_back({"adj-dyn-bayes", adjusted_source(*bayes, *model)});
    } else if (token == "mle") {
      entries.push_back({"mle", grid_source(*mle)});
    } else if (token == "external") {
      entries.push_back({"external", external_source(*external)});
    } else {
      throw InputError("unknown model '" + token +
                       "' (expected mle, dyn, adj or external)");
    }
  }

  const EvaluationReport report = compare_models(entries, games, checkpoints, args.threads);
  if (args.out.empty()) {
    store::write_report(report, std::cout);
  } else {
    store::write_report(report, args.out);
  }
  for (const EvaluationEntry& entry : report.entries) {
    char line[160];
    if (entry.overall_brier) {
      std::snprintf(line, sizeof(line), "%-16s brier=%.6f Q=%lld", entry.label.c_str(),
                    *entry.overall_brier, entry.observations);
    } else {
      std::snprintf(line, sizeof(line), "%-16s %s", entry.label.c_str(),
                    entry.annotation.c_str());
    }
    std::cerr << line << "\n";
  }
  return 0;
}

// --- predict ----------------------------------------------------------------

struct PredictArgs {
  std::string plays;
  std::string game_id;
  std::string grid;
  std::string weights;
  std::string models = "dyn,adj";
  double pregame_prob = -1.0;
  std::string pregame;
  double spread = 0.0;
  bool has_spread = false;
  double sigma = PregameSource::kDefaultSpreadSigma;
  std::string external;
  std::string out;
};

int run_predict(const PredictArgs& args) {
  Warnings warnings;
  const std::vector<GameRecord> games = load_games(args.plays, &warnings);

  const GameRecord* game = nullptr;
  for (const GameRecord& candidate : games) {
    if (candidate.game_id == args.game_id) {
      game = &candidate;
      break;
    }
  }
  if (!game) throw InputError("game " + args.game_id + " not found in " + args.plays);

  const std::vector<std::string> models = split_tokens(args.models);
  const bool wants_adj = std::find(models.begin(), models.end(), "adj") != models.end();

  std::optional<double> pregame_prob;
  if (args.pregame_prob >= 0.0) {
    if (!(args.pregame_prob > 0.0 && args.pregame_prob < 1.0)) {
      throw InputError("--pregame-prob must lie in (0,1)");
    }
    pregame_prob = args.pregame_prob;
  } else if (args.has_spread) {
    pregame_prob = spread_to_prob(args.spread, args.sigma);
  } else if (!args.pregame.empty()) {
    auto pregame_in = csv::open_input(args.pregame);
    const auto pregame_map = parse_pregame(pregame_in, &warnings, args.pregame);
    const auto it = pregame_map.find(args.game_id);
    if (it == pregame_map.end()) {
      throw InputError("no pregame probability for game " + args.game_id);
    }
    pregame_prob = it->second;
  }
  if (wants_adj && !pregame_prob) {
    throw InputError("model 'adj' needs --pregame-prob, --spread or --pregame");
  }
  print_warnings(warnings);

  GameRecord scored = *game;
  scored.pregame_home_prob = pregame_prob;

  const WinProbGrid bayes = store::read_grid(args.grid, GridKind::kBayes);
  std::optional<WeightModel> model;
  if (wants_adj) model = store::read_weight_model(args.weights);

  std::optional<ExternalTrajectories> external;
  if (std::find(models.begin(), models.end(), "external") != models.end()) {
    if (args.external.empty()) throw InputError("model 'external' requires --external");
    auto external_in = csv::open_input(args.external);
    external = parse_external_trajectory(external_in, nullptr, args.external);
  }

  std::vector<LabeledSource> sources;
  for (const std::string& token : models) {
    if (token == "dyn") {
      sources.push_back({"dyn-bayes", grid_source(bayes)});
    } else if (token == "adj") {
      sources.push_back({"adj-dyn-bayes", adjusted_source(bayes, *model)});
    } else if (token == "external") {
      sources.push_back({"external", external_source(*external)});
    } else {
      throw InputError("unknown model '" + token + "' (expected dyn, adj or external)");
    }
  }

  const TrajectoryTable table = export_trajectory(sources, scored);
  if (args.out.empty()) {
    store::write_trajectory(table, std::cout);
  } else {
    store::write_trajectory(table, args.out);
  }
  return 0;
}

// --- command wiring ----------------------------------------------------------

constexpr const char* kPlaysSchema =
    "plays CSV (game_id,elapsed_seconds,home_score,away_score)";
constexpr const char* kPregameSchema = "pregame CSV (game_id,home_win_prob)";
constexpr const char* kPriorsSchema =
    "'default' or prior table CSV (t_lo,t_hi,lead_lo,lead_hi,alpha,beta)";
constexpr const char* kGridSchema = "grid CSV (t,lead,estimate,N,n)";
constexpr const char* kWeightsSchema = "weights CSV (family,name,value)";
constexpr const char* kExternalSchema =
    "external trajectory CSV (game_id,elapsed_seconds,home_win_prob)";

int dispatch(int argc, char** argv) {
  CLI::App app{"In-game win probability estimation from play-by-play data"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate synthetic games");
  simulate->add_option("--games", sim.n_games, "number of games to simulate")
      ->required();
  simulate->add_option("--seed", sim.seed, "random seed (all output derives from it)");
  simulate->add_option("--home-strength", sim.home_strength,
                       "shift of the 0.5 home-scoring chance, in [-0.5, 0.5]");
  simulate->add_option("--possession-rate", sim.possession_rate,
                       "possession resolutions per second, in (0, 1]");
  simulate->add_option("--points", sim.points,
                       "probabilities of scoring 0,1,2,3,4 points, comma separated");
  simulate->add_option("--out", sim.out, std::string("output ") + kPlaysSchema)
      ->required();
  simulate->add_option("--pregame-out", sim.pregame_out,
                       std::string("output ") + kPregameSchema +
                           ", Monte Carlo start-state win probability");
  simulate->add_option("--mc", sim.mc_replicates,
                       "Monte Carlo replicates for --pregame-out");
  simulate->add_option("--threads", sim.threads,
                       "worker cap (default: WINPROB_THREADS or all cores)");

  IngestArgs ing;
  auto* ingest = app.add_subcommand("ingest", "Validate and canonicalize play-by-play");
  ingest->add_option("--plays", ing.plays, std::string("input ") + kPlaysSchema)
      ->required();
  ingest->add_option("--out", ing.out, std::string("output canonical ") + kPlaysSchema)
      ->required();

  FitPriorsArgs fp;
  auto* fit_priors = app.add_subcommand("fit-priors", "Fit a prior table from a survey");
  fit_priors
      ->add_option("--survey", fp.survey,
                   "survey CSV (time_bucket,lead_bucket,respondent_id,win_prob)")
      ->required();
  fit_priors->add_option("--fallback", fp.fallback,
                         std::string("fallback priors: ") + kPriorsSchema);
  fit_priors->add_option("--out", fp.out, "output prior table CSV")->required();

  BuildGridArgs bg;
  auto* build_grid = app.add_subcommand("build-grid", "Build a win-probability grid");
  build_grid->add_option("--games", bg.games, std::string("input ") + kPlaysSchema)
      ->required();
  build_grid->add_option("--priors", bg.priors, kPriorsSchema);
  build_grid->add_option("--kind", bg.kind, "grid kind: bayes (default) or mle");
  build_grid->add_option("--out", bg.out, std::string("output ") + kGridSchema)
      ->required();
  build_grid->add_option("--threads", bg.threads,
                         "worker cap (default: WINPROB_THREADS or all cores)");

  FitWeightsArgs fw;
  auto* fit_weights = app.add_subcommand("fit-weights", "Fit blend coefficients");
  fit_weights->add_option("--family", fw.family, "weight family: b1, b2 or b3");
  fit_weights->add_option("--train", fw.train, std::string("training ") + kPlaysSchema)
      ->required();
  fit_weights->add_option("--pregame", fw.pregame, std::string("input ") + kPregameSchema)
      ->required();
  fit_weights->add_option("--priors", fw.priors,
                          std::string("priors when building the grid: ") + kPriorsSchema);
  fit_weights->add_option("--grid", fw.grid,
                          std::string("prebuilt bayes ") + kGridSchema +
                              " (default: built from --train)");
  fit_weights->add_option("--out", fw.out, std::string("output ") + kWeightsSchema)
      ->required();
  fit_weights->add_option("--report", fw.report,
                          "output fit report CSV (family,brier,converged,iterations)");
  fit_weights->add_option("--init", fw.init, "initial coefficients, comma separated");
  fit_weights->add_option("--max-iterations", fw.max_iterations,
                          "simplex iteration cap per start");
  fit_weights->add_option("--tolerance", fw.tolerance, "simplex value-spread tolerance");
  fit_weights->add_option("--restarts", fw.restarts, "perturbed restarts");
  fit_weights->add_option("--seed", fw.seed, "seed for restart perturbations");
  fit_weights->add_option("--threads", fw.threads,
                          "worker cap (default: WINPROB_THREADS or all cores)");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score models with Brier reports");
  evaluate->add_option("--games", ev.games, std::string("evaluation ") + kPlaysSchema)
      ->required();
  evaluate->add_option("--models", ev.models,
                       "comma list of mle, dyn, adj, external (default dyn,adj)");
  evaluate->add_option("--grid", ev.grid,
                       std::string("bayes ") + kGridSchema +
                           " (default: built from --games with --priors)");
  evaluate->add_option("--mle-grid", ev.mle_grid,
                       std::string("mle ") + kGridSchema +
                           " (default: built from --games)");
  evaluate->add_option("--priors", ev.priors, kPriorsSchema);
  evaluate->add_option("--weights", ev.weights, std::string("input ") + kWeightsSchema);
  evaluate->add_option("--pregame", ev.pregame, std::string("input ") + kPregameSchema);
  evaluate->add_option("--external", ev.external, std::string("input ") + kExternalSchema);
  evaluate->add_option("--checkpoints", ev.checkpoints,
                       "minutes-remaining checkpoints (default 24,12,6,3,1)");
  evaluate->add_option("--out", ev.out,
                       "output report CSV (model,overall_brier,Q,ckpt*,note); stdout if absent");
  evaluate->add_option("--threads", ev.threads,
                       "worker cap (default: WINPROB_THREADS or all cores)");

  PredictArgs pr;
  auto* predict = app.add_subcommand("predict", "Export one game's per-second trajectory");
  predict->add_option("--plays", pr.plays, std::string("input ") + kPlaysSchema)
      ->required();
  predict->add_option("--game", pr.game_id, "game_id to export")->required();
  predict->add_option("--grid", pr.grid, std::string("bayes ") + kGridSchema)->required();
  predict->add_option("--weights", pr.weights, std::string("input ") + kWeightsSchema);
  predict->add_option("--models", pr.models,
                      "comma list of dyn, adj, external (default dyn,adj)");
  predict->add_option("--pregame-prob", pr.pregame_prob,
                      "pregame home win probability in (0,1)");
  auto* spread_opt =
      predict->add_option("--spread", pr.spread, "pregame home point spread (margin)");
  predict->add_option("--sigma", pr.sigma, "margin stdev for --spread (default 11.5)");
  predict->add_option("--pregame", pr.pregame,
                      std::string("input ") + kPregameSchema + " to look the game up in");
  predict->add_option("--external", pr.external, std::string("input ") + kExternalSchema);
  predict->add_option("--out", pr.out, "output trajectory CSV; stdout if absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }
  pr.has_spread = spread_opt->count() > 0;

  if (simulate->parsed()) return run_simulate(sim);
  if (ingest->parsed()) return run_ingest(ing);
  if (fit_priors->parsed()) return run_fit_priors(fp);
  if (build_grid->parsed()) return run_build_grid(bg);
  if (fit_weights->parsed()) return run_fit_weights(fw);
  if (evaluate->parsed()) return run_evaluate(ev);
  if (predict->parsed()) return run_predict(pr);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const winprob::InputError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 2;
  }
}
