#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "winprob/adjust.hpp"
#include "winprob/domain.hpp"
#include "winprob/ingest.hpp"
#include "winprob/parallel.hpp"

namespace winprob {

// A probability source answers "what did this model predict for this game
// at second t", or nothing when the model has no estimate there.
using ProbSource = std::function<std::optional<double>(const GameRecord&, int)>;

struct LabeledSource {
  std::string label;
  ProbSource source;
};

// Grid-backed source: reads the cell at (t, lead at t).
inline ProbSource grid_source(const WinProbGrid& grid) {
  return [&grid](const GameRecord& game, int t) -> std::optional<double> {
    const int lead = game.lead_series[std::size_t(t)];
    if (!grid.has_estimate(t, lead)) return std::nullopt;
    return grid.estimate(t, lead);
  };
}

// Pregame/in-game blend using each game's own pregame probability.
inline ProbSource adjusted_source(const WinProbGrid& bayes, WeightModel model) {
  return [&bayes, model = std::move(model)](const GameRecord& game,
                                            int t) -> std::optional<double> {
    if (!game.pregame_home_prob) {
      throw InputError("no pregame probability for game " + game.game_id);
    }
    const int lead = game.lead_series[std::size_t(t)];
    if (!bayes.has_estimate(t, lead)) return std::nullopt;
    return adjusted_estimate(model, *game.pregame_home_prob,
                             bayes.estimate(t, lead), t, lead);
  };
}

inline ProbSource external_source(const ExternalTrajectories& trajectories) {
  return [&trajectories](const GameRecord& game, int t) {
    return trajectories.lookup(game.game_id, t);
  };
}

struct BrierResult {
  double brier = 0.0;
  long long observations = 0;  // Q
};

// Mean of (prediction - outcome)^2 over every game-second the source
// covers. Missing predictions are excluded from both the sum and Q.
// Per-game partial sums are combined in game order, so the result does not
// depend on the worker count.
inline BrierResult brier_overall(const ProbSource& source,
                                 const std::vector<GameRecord>& games,
                                 unsigned threads = 0) {
  if (games.empty()) throw InputError("no games to score");

  struct Partial {
    CompensatedSum sum;
    long long count = 0;
    std::string error;
  };
  std::vector<Partial> partials(games.size());
  parallel_for(games.size(), threads, [&](std::size_t g) {
    const GameRecord& game = games[g];
    Partial& partial = partials[g];
    try {
      const double y = game.home_win ? 1.0 : 0.0;
      for (int t = 0; t < kRegulationSeconds; ++t) {
        if (const auto p = source(game, t)) {
          const double d = *p - y;
          partial.sum.add(d * d);
          ++partial.count;
        }
      }
    } catch (const std::exception& err) {
      partial.error = err.what();
    }
  });

  CompensatedSum total;
  long long observations = 0;
  for (const Partial& partial : partials) {
    if (!partial.error.empty()) throw InputError(partial.error);
    total.add(partial.sum);
    observations += partial.count;
  }
  if (observations == 0) throw InputError("no scorable observations");
  return {total.value() / double(observations), observations};
}

// Brier restricted to the single second of each checkpoint.
inline std::map<int, double> brier_at_checkpoints(
    const ProbSource& source, const std::vector<GameRecord>& games,
    const std::vector<Checkpoint>& checkpoints) {
  if (games.empty()) throw InputError("no games to score");
  std::map<int, double> out;
  for (const Checkpoint& checkpoint : checkpoints) {
    const int t = checkpoint.elapsed();
    if (!valid_clock(t)) {
      throw InputError("checkpoint " + std::to_string(checkpoint.minutes_remaining) +
                       " minutes lies outside regulation");
    }
    CompensatedSum sum;
    long long count = 0;
    for (const GameRecord& game : games) {
      if (const auto p = source(game, t)) {
        const double d = *p - (game.home_win ? 1.0 : 0.0);
        sum.add(d * d);
        ++count;
      }
    }
    if (count == 0) {
      throw InputError("checkpoint " + std::to_string(checkpoint.minutes_remaining) +
                       " minutes: no scorable observations");
    }
    out[checkpoint.minutes_remaining] = sum.value() / double(count);
  }
  return out;
}

// One report row per model, in the given order. Scoring failures annotate
// the row instead of aborting the comparison.
inline EvaluationReport compare_models(const std::vector<LabeledSource>& entries,
                                       const std::vector<GameRecord>& games,
                                       const std::vector<Checkpoint>& checkpoints,
                                       unsigned threads = 0) {
  if (entries.empty()) throw InputError("no models to compare");
  EvaluationReport report;
  for (const Checkpoint& checkpoint : checkpoints) {
    report.checkpoint_minutes.push_back(checkpoint.minutes_remaining);
  }
  for (const LabeledSource& entry : entries) {
    EvaluationEntry row;
    row.label = entry.label;
    try {
      const BrierResult overall = brier_overall(entry.source, games, threads);
      row.overall_brier = overall.brier;
      row.observations = overall.observations;
    } catch (const InputError& err) {
      row.annotation = err.what();
    }
    for (const Checkpoint& checkpoint : checkpoints) {
      try {
        const auto scores = brier_at_checkpoints(entry.source, games, {checkpoint});
        row.checkpoint_brier[checkpoint.minutes_remaining] =
            scores.at(checkpoint.minutes_remaining);
      } catch (const InputError&) {
        row.checkpoint_brier[checkpoint.minutes_remaining] = std::nullopt;
      }
    }
    report.entries.push_back(std::move(row));
  }
  return report;
}

// Per-second table of one game's predictions across several sources,
// ready for plotting.
struct TrajectoryRow {
  int t = 0;
  int lead = 0;
  std::vector<std::optional<double>> values;

  friend bool operator==(const TrajectoryRow&, const TrajectoryRow&) = default;
};

struct TrajectoryTable {
  std::vector<std::string> labels;
  std::vector<TrajectoryRow> rows;

  friend bool operator==(const TrajectoryTable&, const TrajectoryTable&) = default;
};

inline TrajectoryTable export_trajectory(const std::vector<LabeledSource>& sources,
                                         const GameRecord& game) {
  TrajectoryTable table;
  for (const LabeledSource& source : sources) table.labels.push_back(source.label);
  table.rows.reserve(kRegulationSeconds);
  for (int t = 0; t < kRegulationSeconds; ++t) {
    TrajectoryRow row;
    row.t = t;
    row.lead = game.lead_series[std::size_t(t)];
    for (const LabeledSource& source : sources) {
      row.values.push_back(source.source(game, t));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace winprob
