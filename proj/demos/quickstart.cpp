// End-to-end walkthrough on synthetic data: simulate a small season, build
// the posterior-mean grid, blend in a pregame probability, and score
// everything with Brier reports.

#include <iostream>

#include "winprob/winprob.hpp"

int main() {
  using namespace winprob;

  SimConfig config;
  config.n_games = 500;
  config.seed = 7;
  config.home_strength = 0.03;
  SimResult sim = simulate_games(config);

  const double pregame = true_win_prob(config, 0, 0, 20000, 99);
  for (GameRecord& game : sim.games) game.pregame_home_prob = pregame;
  std::cout << "simulated " << sim.games.size()
            << " games, start-state win probability " << pregame << "\n";

  const WinProbGrid bayes =
      build_bayes_grid(sim.games, WindowSpec{}, default_prior_table());
  std::cout << "bayes estimate at (t=1440, lead=+5): " << bayes.estimate(1440, 5)
            << " from " << bayes.counts(1440, 5).games << " games\n";

  FitConfig fit_config;
  fit_config.family = WeightFamily::kB1;
  const FitResult fit = fit_weights(fit_config, sim.games, bayes);
  std::cout << "fitted B1 blend: b = " << fit.model.coefficients[0]
            << ", training brier = " << fit.brier << "\n";

  const std::vector<LabeledSource> models = {
      {"dyn-bayes", grid_source(bayes)},
      {"adj-dyn-bayes", adjusted_source(bayes, fit.model)},
  };
  const EvaluationReport report =
      compare_models(models, sim.games, default_checkpoints());
  store::write_report(report, std::cout);
  return 0;
}
