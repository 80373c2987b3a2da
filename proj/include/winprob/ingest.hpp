#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "winprob/csv.hpp"
#include "winprob/domain.hpp"
#include "winprob/priors.hpp"

namespace winprob {

// One play-by-play score line. elapsed_seconds may exceed regulation for
// overtime events.
struct PlayEvent {
  std::string game_id;
  int elapsed_seconds = 0;
  int home_score = 0;
  int away_score = 0;

  int lead() const { return home_score - away_score; }

  friend bool operator==(const PlayEvent&, const PlayEvent&) = default;
};

struct GamePlays {
  std::string game_id;
  std::vector<PlayEvent> events;  // sorted by elapsed_seconds, input order on ties
};

struct ParsedPlays {
  std::vector<GamePlays> games;  // in order of first appearance
  Warnings warnings;
};

// Plays CSV: header `game_id,elapsed_seconds,home_score,away_score`.
// Events are grouped per game and stably sorted by elapsed time; a score
// that decreases within a game produces a warning, not an error.
inline ParsedPlays parse_plays(std::istream& in, const std::string& name = "plays") {
  csv::Reader reader(in, name);
  reader.expect_header("game_id,elapsed_seconds,home_score,away_score");

  ParsedPlays out;
  std::unordered_map<std::string, std::size_t> game_index;
  std::vector<std::string> fields;
  while (reader.next_row(fields)) {
    reader.require_fields(fields, 4);
    PlayEvent event;
    event.game_id = fields[0];
    if (event.game_id.empty()) reader.fail("empty game_id");
    event.elapsed_seconds = int(reader.parse_int(fields[1], "elapsed_seconds"));
    if (event.elapsed_seconds < 0) reader.fail("negative elapsed_seconds");
    event.home_score = int(reader.parse_int(fields[2], "home_score"));
    event.away_score = int(reader.parse_int(fields[3], "away_score"));
    if (event.home_score < 0 || event.away_score < 0) reader.fail("negative score");

    auto [it, inserted] = game_index.try_emplace(event.game_id, out.games.size());
    if (inserted) out.games.push_back({event.game_id, {}});
    out.games[it->second].events.push_back(std::move(event));
  }

  for (auto& game : out.games) {
    std::stable_sort(game.events.begin(), game.events.end(),
                     [](const PlayEvent& a, const PlayEvent& b) {
                       return a.elapsed_seconds < b.elapsed_seconds;
                     });
    int max_home = 0;
    int max_away = 0;
    for (const PlayEvent& event : game.events) {
      if (event.home_score < max_home || event.away_score < max_away) {
        out.warnings.push_back("game " + game.game_id + ": score decreases at t=" +
                               std::to_string(event.elapsed_seconds));
      }
      max_home = std::max(max_home, event.home_score);
      max_away = std::max(max_away, event.away_score);
    }
  }
  return out;
}

// Per-second lead series as a right-continuous step function: lead_series[t]
// is the lead after the last event with elapsed_seconds <= t (file order wins
// within a second), zero before the first event, clamped to [-58, 58].
// Overtime events feed only the outcome label, never the series.
inline GameRecord derive_lead_series(const std::vector<PlayEvent>& events,
                                     bool final_outcome,
                                     Warnings* warnings = nullptr) {
  if (events.empty()) throw InputError("game has no events");

  GameRecord record;
  record.game_id = events.front().game_id;
  record.home_win = final_outcome;
  record.lead_series.assign(kRegulationSeconds, 0);

  std::size_t next = 0;
  int lead = 0;
  for (int t = 0; t < kRegulationSeconds; ++t) {
    while (next < events.size() && events[next].elapsed_seconds <= t) {
      lead = events[next].lead();
      ++next;
    }
    record.lead_series[t] = std::int8_t(clamp_lead(lead));
  }

  if (warnings) {
    if (record.lead_series[0] != 0) {
      warnings->push_back("game " + record.game_id +
                          ": nonzero lead at t=0 (a game should start tied)");
    }
    for (int t = 0; t + 1 < kRegulationSeconds; ++t) {
      const int jump = std::abs(int(record.lead_series[t + 1]) - int(record.lead_series[t]));
      if (jump > 4) {
        warnings->push_back("game " + record.game_id + ": lead jumps by " +
                            std::to_string(jump) + " at t=" + std::to_string(t + 1));
      }
    }
  }
  return record;
}

// Final outcome from the last event of the game (overtime included).
// A tied final score cannot happen in finished games; it is labeled as a
// home loss with a warning rather than aborting the pipeline.
inline bool final_outcome_of(const GamePlays& game, Warnings* warnings = nullptr) {
  const PlayEvent& last = game.events.back();
  if (last.home_score == last.away_score && warnings) {
    warnings->push_back("game " + game.game_id +
                        ": final score tied, labeling as home loss");
  }
  return last.home_score > last.away_score;
}

inline std::vector<GameRecord> games_from_plays(const ParsedPlays& parsed,
                                                Warnings* warnings = nullptr) {
  std::vector<GameRecord> games;
  games.reserve(parsed.games.size());
  for (const GamePlays& game : parsed.games) {
    games.push_back(derive_lead_series(game.events, final_outcome_of(game, warnings),
                                       warnings));
  }
  return games;
}

// Pregame CSV: header `game_id,home_win_prob`, probabilities strictly
// inside (0, 1). Duplicate ids keep the last row and warn.
inline std::map<std::string, double> parse_pregame(std::istream& in,
                                                   Warnings* warnings = nullptr,
                                                   const std::string& name = "pregame") {
  csv::Reader reader(in, name);
  reader.expect_header("game_id,home_win_prob");
  std::map<std::string, double> out;
  std::vector<std::string> fields;
  while (reader.next_row(fields)) {
    reader.require_fields(fields, 2);
    const double prob = reader.parse_double(fields[1], "home_win_prob");
    if (!(prob > 0.0 && prob < 1.0)) {
      reader.fail("home_win_prob " + fields[1] + " outside (0,1)");
    }
    auto [it, inserted] = out.insert_or_assign(fields[0], prob);
    (void)it;
    if (!inserted && warnings) {
      warnings->push_back("pregame: duplicate game_id " + fields[0] +
                          ", keeping the later row");
    }
  }
  return out;
}

// Attaches pregame probabilities to games; every game must have one.
inline void attach_pregame(std::vector<GameRecord>& games,
                           const std::map<std::string, double>& pregame) {
  for (GameRecord& game : games) {
    const auto it = pregame.find(game.game_id);
    if (it == pregame.end()) {
      throw InputError("no pregame probability for game " + game.game_id);
    }
    game.pregame_home_prob = it->second;
  }
}

struct SurveyResponse {
  PriorBucket bucket;
  std::string respondent_id;
  double win_prob = 0.5;
};

// Survey CSV: header `time_bucket,lead_bucket,respondent_id,win_prob`.
// Bucket labels must name a bucket of the default prior geometry, written
// as `lo-hi` or `>=lo` (e.g. `361-720`, `10-19`, `>=20`).
inline std::vector<SurveyResponse> parse_survey(std::istream& in,
                                                const std::string& name = "survey") {
  csv::Reader reader(in, name);
  reader.expect_header("time_bucket,lead_bucket,respondent_id,win_prob");

  std::map<std::pair<std::string, std::string>, PriorBucket> by_label;
  for (const PriorRow& row : default_prior_table().rows()) {
    by_label.emplace(std::make_pair(row.bucket.time_label(), row.bucket.lead_label()),
                     row.bucket);
  }

  std::vector<SurveyResponse> out;
  std::vector<std::string> fields;
  while (reader.next_row(fields)) {
    reader.require_fields(fields, 4);
    const auto it = by_label.find(std::make_pair(fields[0], fields[1]));
    if (it == by_label.end()) {
      reader.fail("unknown survey bucket (" + fields[0] + ", " + fields[1] + ")");
    }
    const double prob = reader.parse_double(fields[3], "win_prob");
    if (!(prob > 0.0 && prob < 1.0)) {
      reader.fail("win_prob " + fields[3] + " outside (0,1)");
    }
    out.push_back({it->second, fields[2], prob});
  }
  return out;
}

inline SurveyGroups group_survey(const std::vector<SurveyResponse>& responses) {
  SurveyGroups groups;
  for (const SurveyResponse& response : responses) {
    groups[response.bucket].push_back(response.win_prob);
  }
  return groups;
}

// Per-game per-second probabilities from an outside model. Sparse: absent
// seconds stay missing, no interpolation.
class ExternalTrajectories {
 public:
  void set(const std::string& game_id, int t, double prob) {
    auto& series = per_game_[game_id];
    if (series.empty()) {
      series.assign(kRegulationSeconds, std::numeric_limits<double>::quiet_NaN());
    }
    series[std::size_t(t)] = prob;
  }

  bool has(const std::string& game_id, int t) const {
    const auto it = per_game_.find(game_id);
    return it != per_game_.end() && !std::isnan(it->second[std::size_t(t)]);
  }

  std::optional<double> lookup(const std::string& game_id, int t) const {
    const auto it = per_game_.find(game_id);
    if (it == per_game_.end()) return std::nullopt;
    const double p = it->second[std::size_t(t)];
    if (std::isnan(p)) return std::nullopt;
    return p;
  }

  std::size_t game_count() const { return per_game_.size(); }

 private:
  std::unordered_map<std::string, std::vector<double>> per_game_;
};

// External trajectory CSV: header `game_id,elapsed_seconds,home_win_prob`,
// probabilities in [0, 1]. Duplicate (game, second) keeps the last row and
// warns; overtime seconds are ignored (the lattice is regulation-only).
inline ExternalTrajectories parse_external_trajectory(
    std::istream& in, Warnings* warnings = nullptr,
    const std::string& name = "external") {
  csv::Reader reader(in, name);
  reader.expect_header("game_id,elapsed_seconds,home_win_prob");
  ExternalTrajectories out;
  std::vector<std::string> fields;
  while (reader.next_row(fields)) {
    reader.require_fields(fields, 3);
    const int t = int(reader.parse_int(fields[1], "elapsed_seconds"));
    if (t < 0) reader.fail("negative elapsed_seconds");
    const double prob = reader.parse_double(fields[2], "home_win_prob");
    if (!(prob >= 0.0 && prob <= 1.0)) {
      reader.fail("home_win_prob " + fields[2] + " outside [0,1]");
    }
    if (t > kMaxClock) continue;
    if (out.has(fields[0], t) && warnings) {
      warnings->push_back("external: duplicate (" + fields[0] + ", t=" +
                          std::to_string(t) + "), keeping the later row");
    }
    out.set(fields[0], t, prob);
  }
  return out;
}

}  // namespace winprob
