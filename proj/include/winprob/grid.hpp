#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "winprob/domain.hpp"
#include "winprob/parallel.hpp"
#include "winprob/priors.hpp"

namespace winprob {

// Counting window centered on a lattice cell: always +-3 seconds in time;
// the lead halfwidth narrows near the end of the game, where a small score
// difference matters much more.
struct WindowSpec {
  int t_halfwidth = 3;

  int lead_halfwidth(int t) const {
    if (t <= 2700) return 2;
    if (t <= 2820) return 1;
    return 0;
  }
};

// Games whose lead series enters [lead-h, lead+h] during [t-3, t+3],
// truncated at the lattice edges. Each game counts at most once; wins
// count those games the home team went on to win.
inline CellCounts window_counts(const std::vector<GameRecord>& games, int t,
                                int lead, const WindowSpec& spec = {}) {
  const int h = spec.lead_halfwidth(t);
  const int u_lo = std::max(0, t - spec.t_halfwidth);
  const int u_hi = std::min(kMaxClock, t + spec.t_halfwidth);
  CellCounts counts;
  for (const GameRecord& game : games) {
    bool member = false;
    for (int u = u_lo; u <= u_hi && !member; ++u) {
      const int v = game.lead_series[std::size_t(u)];
      member = v >= lead - h && v <= lead + h;
    }
    if (member) {
      ++counts.games;
      if (game.home_win) ++counts.wins;
    }
  }
  return counts;
}

namespace detail {

// Counts for every lead at one time column. A game contributes to cell
// (t, lead) iff some window value v has |v - lead| <= h, i.e. lead lies in
// the union of [v-h, v+h] over the window values; that union is applied
// through a difference array so each game costs O(window) per column.
inline void column_counts(const std::vector<GameRecord>& games, int t,
                          const WindowSpec& spec, std::vector<CellCounts>& out) {
  const int h = spec.lead_halfwidth(t);
  const int u_lo = std::max(0, t - spec.t_halfwidth);
  const int u_hi = std::min(kMaxClock, t + spec.t_halfwidth);

  std::array<std::int32_t, kLeadSpan + 1> diff_games{};
  std::array<std::int32_t, kLeadSpan + 1> diff_wins{};

  std::array<int, 7> values{};
  for (const GameRecord& game : games) {
    int n_values = 0;
    for (int u = u_lo; u <= u_hi; ++u) {
      const int v = game.lead_series[std::size_t(u)];
      if (n_values == 0 || values[std::size_t(n_values - 1)] != v) {
        values[std::size_t(n_values++)] = v;
      }
    }
    std::sort(values.begin(), values.begin() + n_values);

    // Merge [v-h, v+h] intervals; adjacent intervals coalesce.
    int lo = values[0] - h;
    int hi = values[0] + h;
    const auto emit = [&](int a, int b) {
      a = std::max(a, -kMaxLead) + kMaxLead;
      b = std::min(b, kMaxLead) + kMaxLead;
      ++diff_games[std::size_t(a)];
      --diff_games[std::size_t(b + 1)];
      if (game.home_win) {
        ++diff_wins[std::size_t(a)];
        --diff_wins[std::size_t(b + 1)];
      }
    };
    for (int i = 1; i < n_values; ++i) {
      if (values[std::size_t(i)] == values[std::size_t(i - 1)]) continue;
      if (values[std::size_t(i)] - h <= hi + 1) {
        hi = values[std::size_t(i)] + h;
      } else {
        emit(lo, hi);
        lo = values[std::size_t(i)] - h;
        hi = values[std::size_t(i)] + h;
      }
    }
    emit(lo, hi);
  }

  std::int32_t run_games = 0;
  std::int32_t run_wins = 0;
  for (int i = 0; i < kLeadSpan; ++i) {
    run_games += diff_games[std::size_t(i)];
    run_wins += diff_wins[std::size_t(i)];
    out[std::size_t(i)] = {run_games, run_wins};
  }
}

template <typename CellFn>
void build_grid_cells(const std::vector<GameRecord>& games, const WindowSpec& spec,
                      unsigned threads, WinProbGrid& grid, CellFn&& cell_fn) {
  parallel_for(kRegulationSeconds, threads, [&](std::size_t ti) {
    const int t = int(ti);
    std::vector<CellCounts> column(kLeadSpan);
    column_counts(games, t, spec, column);
    for (int lead = -kMaxLead; lead <= kMaxLead; ++lead) {
      cell_fn(grid, t, lead, column[std::size_t(lead + kMaxLead)]);
    }
  });
}

}  // namespace detail

// Relative-frequency estimate n/N per cell; cells no game passes through
// stay missing.
inline WinProbGrid build_mle_grid(const std::vector<GameRecord>& games,
                                  const WindowSpec& spec = {},
                                  unsigned threads = 0) {
  if (games.empty()) throw InputError("cannot build a grid from zero games");
  WinProbGrid grid(GridKind::kMle);
  detail::build_grid_cells(games, spec, threads, grid,
                           [](WinProbGrid& g, int t, int lead, CellCounts c) {
                             if (c.games > 0) {
                               g.set_cell(t, lead, double(c.wins) / double(c.games), c);
                             } else {
                               g.set_missing(t, lead, c);
                             }
                           });
  return grid;
}

// Posterior-mean estimate (n + alpha) / (N + alpha + beta) per cell. The
// prior pseudo-counts fill empty windows, so no cell is ever missing.
inline WinProbGrid build_bayes_grid(const std::vector<GameRecord>& games,
                                    const WindowSpec& spec,
                                    const PriorTable& priors,
                                    unsigned threads = 0) {
  WinProbGrid grid(GridKind::kBayes);
  detail::build_grid_cells(
      games, spec, threads, grid,
      [&priors](WinProbGrid& g, int t, int lead, CellCounts c) {
        const BetaParams prior = lookup_prior(priors, t, lead);
        const double estimate = (double(c.wins) + prior.alpha) /
                                (double(c.games) + prior.alpha + prior.beta);
        g.set_cell(t, lead, estimate, c);
      });
  return grid;
}

}  // namespace winprob
