#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "winprob/domain.hpp"
#include "winprob/parallel.hpp"
#include "winprob/rng.hpp"

namespace winprob {

// Synthetic game model: each second one possession may resolve, the scoring
// side is a coin weighted by home_strength, and the points scored follow
// point_distribution (capped at 4, the most a single possession can yield).
// The state (t, lead) is Markov, so ground-truth win probabilities are
// well-defined per cell and estimable by Monte Carlo.
struct SimConfig {
  int n_games = 100;
  std::uint64_t seed = 1;
  double home_strength = 0.0;         // shift of the 0.5 home-scoring chance
  double possession_rate = 1.0 / 18;  // possession resolutions per second
  std::array<double, 5> point_distribution{0.55, 0.09, 0.24, 0.11, 0.01};

  void validate() const {
    if (n_games <= 0) throw InputError("n_games must be positive");
    if (!(possession_rate > 0.0 && possession_rate <= 1.0)) {
      throw InputError("possession_rate must lie in (0, 1]");
    }
    if (!(home_strength >= -0.5 && home_strength <= 0.5)) {
      throw InputError("home_strength must lie in [-0.5, 0.5]");
    }
    double total = 0.0;
    for (double p : point_distribution) {
      if (!(p >= 0.0)) throw InputError("point_distribution entries must be >= 0");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw InputError("point_distribution must sum to 1");
    }
  }
};

namespace detail {

// One second of game dynamics applied to the true (unclamped) lead.
inline void step_second(const SimConfig& config, Rng& rng, int& lead) {
  if (rng.uniform01() >= config.possession_rate) return;
  const bool home = rng.uniform01() < 0.5 + config.home_strength;
  const double roll = rng.uniform01();
  double cumulative = 0.0;
  int points = 0;
  for (int k = 0; k < 5; ++k) {
    cumulative += config.point_distribution[std::size_t(k)];
    if (roll < cumulative) {
      points = k;
      break;
    }
  }
  lead += home ? points : -points;
}

inline bool resolve_outcome(int final_lead, Rng& rng) {
  if (final_lead != 0) return final_lead > 0;
  return rng.bernoulli(0.5);  // tied after regulation: fair coin
}

}  // namespace detail

struct SimResult {
  std::vector<GameRecord> games;
  std::vector<std::string> tie_log;  // game ids whose outcome came from the coin
};

inline std::string sim_game_id(int index) {
  std::string digits = std::to_string(index + 1);
  return "G" + std::string(6 - std::min<std::size_t>(6, digits.size()), '0') + digits;
}

// Deterministic for a fixed seed: each game draws from its own substream,
// so the worker count cannot change any series.
inline SimResult simulate_games(const SimConfig& config, unsigned threads = 0) {
  config.validate();
  SimResult result;
  result.games.assign(std::size_t(config.n_games), GameRecord{});
  std::vector<std::uint8_t> tied(std::size_t(config.n_games), 0);

  parallel_for(std::size_t(config.n_games), threads, [&](std::size_t g) {
    Rng rng(substream_seed(config.seed, std::uint64_t(g)));
    GameRecord& game = result.games[g];
    game.game_id = sim_game_id(int(g));
    game.lead_series.assign(kRegulationSeconds, 0);
    int lead = 0;  // the opening second cannot score: games start tied
    for (int t = 1; t < kRegulationSeconds; ++t) {
      detail::step_second(config, rng, lead);
      game.lead_series[std::size_t(t)] = std::int8_t(clamp_lead(lead));
    }
    tied[g] = lead == 0 ? 1 : 0;
    game.home_win = detail::resolve_outcome(lead, rng);
  });

  for (std::size_t g = 0; g < result.games.size(); ++g) {
    if (tied[g]) result.tie_log.push_back(result.games[g].game_id);
  }
  return result;
}

// Monte Carlo ground truth: P(home wins | lead after second t is `lead`)
// under the simulator dynamics. Standard error is at most 0.5/sqrt(n_mc).
inline double true_win_prob(const SimConfig& config, int t, int lead, int n_mc,
                            std::uint64_t seed) {
  config.validate();
  if (!valid_clock(t)) throw InputError("t outside regulation");
  if (!valid_lead(lead)) throw InputError("lead outside [-58, 58]");
  if (n_mc < 1) throw InputError("n_mc must be >= 1");

  Rng rng(seed);
  long long wins = 0;
  for (int replicate = 0; replicate < n_mc; ++replicate) {
    int current = lead;
    for (int s = t + 1; s < kRegulationSeconds; ++s) {
      detail::step_second(config, rng, current);
    }
    if (detail::resolve_outcome(current, rng)) ++wins;
  }
  return double(wins) / double(n_mc);
}

}  // namespace winprob
