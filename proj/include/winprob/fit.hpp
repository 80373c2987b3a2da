#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "winprob/adjust.hpp"
#include "winprob/domain.hpp"
#include "winprob/parallel.hpp"
#include "winprob/rng.hpp"

namespace winprob {

inline std::vector<double> default_initial_coefficients(WeightFamily family) {
  switch (family) {
    case WeightFamily::kB1:
      return {1.0 / kRegulationSeconds};
    case WeightFamily::kB2:
      return {1.0 / kRegulationSeconds, 0.0};
    case WeightFamily::kB3:
      return default_weight_model().coefficients;
  }
  return {};
}

struct FitConfig {
  WeightFamily family = WeightFamily::kB3;
  std::vector<double> initial_coefficients;  // empty selects the family default
  int max_iterations = 400;
  double simplex_tolerance = 1e-10;
  int restarts = 2;
  std::uint64_t seed = 1;
};

// Training-set Brier of the blended estimator: every game contributes one
// observation per regulation second. Summed left-to-right over (game, t)
// with compensated accumulation, so the value is reproducible and
// insensitive to worker count.
inline double brier_objective(const std::vector<double>& coefficients,
                              WeightFamily family,
                              const std::vector<GameRecord>& games,
                              const WinProbGrid& bayes, unsigned threads = 0) {
  if (games.empty()) throw InputError("no games to score");
  const WeightModel model(family, coefficients);

  std::vector<CompensatedSum> partials(games.size());
  std::vector<std::string> errors(games.size());
  parallel_for(games.size(), threads, [&](std::size_t g) {
    const GameRecord& game = games[g];
    if (!game.pregame_home_prob) {
      errors[g] = "no pregame probability for game " + game.game_id;
      return;
    }
    const double p_pregame = *game.pregame_home_prob;
    const double y = game.home_win ? 1.0 : 0.0;
    CompensatedSum& sum = partials[g];
    for (int t = 0; t < kRegulationSeconds; ++t) {
      const int lead = game.lead_series[std::size_t(t)];
      const double p_bayes = bayes.estimate(t, lead);
      if (std::isnan(p_bayes)) {
        errors[g] = "grid is missing cell t=" + std::to_string(t) +
                    " lead=" + std::to_string(lead);
        return;
      }
      const double d = adjusted_estimate(model, p_pregame, p_bayes, t, lead) - y;
      sum.add(d * d);
    }
  });

  CompensatedSum total;
  for (std::size_t g = 0; g < games.size(); ++g) {
    if (!errors[g].empty()) throw InputError(errors[g]);
    total.add(partials[g]);
  }
  return total.value() / (double(games.size()) * kRegulationSeconds);
}

struct FitResult {
  WeightModel model;
  double brier = 0.0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

struct SimplexOutcome {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Downhill simplex with the standard reflection/expansion/contraction/
// shrink coefficients. Stops when the value spread across the simplex
// falls below `tolerance`.
template <typename Objective>
SimplexOutcome nelder_mead(const Objective& objective, std::vector<double> start,
                           int max_iterations, double tolerance) {
  const std::size_t n = start.size();
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::vector<std::vector<double>> points(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) {
    points[i + 1][i] = start[i] != 0.0 ? start[i] * 1.05 : 0.00025;
  }
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = objective(points[i]);

  std::vector<std::size_t> order(n + 1);
  SimplexOutcome outcome;
  while (outcome.iterations < max_iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    if (std::abs(values[worst] - values[best]) <= tolerance) {
      outcome.converged = true;
      break;
    }
    ++outcome.iterations;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (std::size_t i = 0; i < n; ++i) centroid[i] += points[k][i];
    }
    for (double& c : centroid) c /= double(n);

    const auto along = [&](double scale) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i) {
        p[i] = centroid[i] + scale * (centroid[i] - points[worst][i]);
      }
      return p;
    };

    std::vector<double> reflected = along(kReflect);
    const double f_reflected = objective(reflected);
    if (f_reflected < values[best]) {
      std::vector<double> expanded = along(kExpand);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        points[worst] = std::move(expanded);
        values[worst] = f_expanded;
      } else {
        points[worst] = std::move(reflected);
        values[worst] = f_reflected;
      }
    } else if (f_reflected < values[second_worst]) {
      points[worst] = std::move(reflected);
      values[worst] = f_reflected;
    } else {
      const bool outside = f_reflected < values[worst];
      std::vector<double> contracted =
          outside ? along(kContract) : along(-kContract);
      const double f_contracted = objective(contracted);
      if (f_contracted < (outside ? f_reflected : values[worst])) {
        points[worst] = std::move(contracted);
        values[worst] = f_contracted;
      } else {
        for (std::size_t k = 0; k <= n; ++k) {
          if (k == best) continue;
          for (std::size_t i = 0; i < n; ++i) {
            points[k][i] = points[best][i] + kShrink * (points[k][i] - points[best][i]);
          }
          values[k] = objective(points[k]);
        }
      }
    }
  }

  const std::size_t best = std::size_t(
      std::min_element(values.begin(), values.end()) - values.begin());
  outcome.x = points[best];
  outcome.f = values[best];
  return outcome;
}

}  // namespace detail

// Minimizes the training Brier over the family's coefficients with a
// derivative-free simplex search (the clamped blend is not differentiable
// where the weight crosses 0 or 1). Runs once from the configured start
// plus `restarts` seeded perturbed starts and keeps the best result.
// Deterministic for a fixed (config, inputs).
inline FitResult fit_weights(const FitConfig& config,
                             const std::vector<GameRecord>& games,
                             const WinProbGrid& bayes, unsigned threads = 0) {
  if (config.max_iterations < 0) throw InputError("max_iterations must be >= 0");
  if (!(config.simplex_tolerance > 0.0)) throw InputError("simplex_tolerance must be > 0");
  if (config.restarts < 0) throw InputError("restarts must be >= 0");

  std::vector<double> start = config.initial_coefficients.empty()
                                  ? default_initial_coefficients(config.family)
                                  : config.initial_coefficients;
  if (start.size() != coefficient_count(config.family)) {
    throw InputError(
        "initial coefficients for " + std::string(to_string(config.family)) +
        " must have " + std::to_string(coefficient_count(config.family)) + " entries");
  }

  const auto objective = [&](const std::vector<double>& coefficients) {
    return brier_objective(coefficients, config.family, games, bayes, threads);
  };

  const double f_start = objective(start);
  if (!std::isfinite(f_start)) {
    throw InputError("objective is not finite at the starting coefficients");
  }

  FitResult result;
  result.model = WeightModel(config.family, start);
  result.brier = f_start;
  result.converged = false;

  if (config.max_iterations == 0) return result;

  for (int run = 0; run <= config.restarts; ++run) {
    std::vector<double> run_start = start;
    if (run > 0) {
      Rng rng(substream_seed(config.seed, std::uint64_t(run)));
      for (double& c : run_start) c *= 1.0 + rng.uniform(-0.5, 0.5);
    }
    const detail::SimplexOutcome outcome = detail::nelder_mead(
        objective, std::move(run_start), config.max_iterations,
        config.simplex_tolerance);
    result.iterations += outcome.iterations;
    if (outcome.f < result.brier) {
      result.model = WeightModel(config.family, outcome.x);
      result.brier = outcome.f;
      result.converged = outcome.converged;
    } else if (run == 0 && outcome.f == result.brier) {
      result.converged = outcome.converged;
    }
  }
  return result;
}

}  // namespace winprob
