#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "winprob/csv.hpp"
#include "winprob/domain.hpp"
#include "winprob/eval.hpp"
#include "winprob/fit.hpp"
#include "winprob/ingest.hpp"
#include "winprob/priors.hpp"

namespace winprob::store {

// Every writer emits a fixed header and rows in a documented total order,
// with numbers in shortest round-trip form, so equal values always produce
// identical bytes.

// ---------------------------------------------------------------------------
// plays CSV (canonical game storage)
//
// One row per lead change, scores synthesized from the lead deltas. When
// the regulation lead disagrees with the recorded outcome (overtime games,
// coin-flip ties), one synthetic overtime row at t=2880 settles the winner;
// it affects only the outcome label on re-ingestion, never the series.

inline void write_plays(const std::vector<GameRecord>& games, std::ostream& out) {
  out << "game_id,elapsed_seconds,home_score,away_score\n";
  for (const GameRecord& game : games) {
    int home = std::max(0, int(game.lead_series[0]));
    int away = std::max(0, -int(game.lead_series[0]));
    out << game.game_id << ",0," << home << ',' << away << '\n';
    for (int t = 1; t < kRegulationSeconds; ++t) {
      const int delta = int(game.lead_series[std::size_t(t)]) -
                        int(game.lead_series[std::size_t(t - 1)]);
      if (delta == 0) continue;
      if (delta > 0) {
        home += delta;
      } else {
        away -= delta;
      }
      out << game.game_id << ',' << t << ',' << home << ',' << away << '\n';
    }
    if ((home > away) != game.home_win) {
      if (game.home_win) {
        home = away + 1;
      } else {
        away = home + 1;
      }
      out << game.game_id << ',' << kRegulationSeconds << ',' << home << ',' << away
          << '\n';
    }
  }
}

inline void write_plays(const std::vector<GameRecord>& games, const std::string& path) {
  auto out = csv::open_output(path);
  write_plays(games, out);
}

// ---------------------------------------------------------------------------
// pregame CSV

inline void write_pregame(const std::vector<std::pair<std::string, double>>& rows,
                          std::ostream& out) {
  out << "game_id,home_win_prob\n";
  for (const auto& [game_id, prob] : rows) {
    out << game_id << ',' << csv::format(prob) << '\n';
  }
}

inline void write_pregame(const std::vector<std::pair<std::string, double>>& rows,
                          const std::string& path) {
  auto out = csv::open_output(path);
  write_pregame(rows, out);
}

// ---------------------------------------------------------------------------
// prior table CSV: rows in table order (ascending time band, then lead)

inline void write_prior_table(const PriorTable& table, std::ostream& out) {
  out << "t_lo,t_hi,lead_lo,lead_hi,alpha,beta\n";
  for (const PriorRow& row : table.rows()) {
    out << row.bucket.t_lo << ',' << row.bucket.t_hi << ',' << row.bucket.lead_lo
        << ',' << row.bucket.lead_hi << ',' << csv::format(row.params.alpha) << ','
        << csv::format(row.params.beta) << '\n';
  }
}

inline void write_prior_table(const PriorTable& table, const std::string& path) {
  auto out = csv::open_output(path);
  write_prior_table(table, out);
}

inline PriorTable read_prior_table(std::istream& in,
                                   const std::string& name = "priors") {
  csv::Reader reader(in, name);
  reader.expect_header("t_lo,t_hi,lead_lo,lead_hi,alpha,beta");
  std::vector<PriorRow> rows;
  std::vector<std::string> fields;
  while (reader.next_row(fields)) {
    reader.require_fields(fields, 6);
    PriorRow row;
    row.bucket.t_lo = int(reader.parse_int(fields[0], "t_lo"));
    row.bucket.t_hi = int(reader.parse_int(fields[1], "t_hi"));
    row.bucket.lead_lo = int(reader.parse_int(fields[2], "lead_lo"));
    row.bucket.lead_hi = int(reader.parse_int(fields[3], "lead_hi"));
    row.params.alpha = reader.parse_double(fields[4], "alpha");
    row.params.beta = reader.parse_double(fields[5], "beta");
    if (!(row.params.alpha > 0.0) || !(row.params.beta > 0.0)) {
      reader.fail("shape parameters must be positive");
    }
    rows.push_back(row);
  }
  try {
    return PriorTable(std::move(rows));
  } catch (const InputError& err) {
    throw InputError(name + ": " + err.what());
  }
}

inline PriorTable read_prior_table(const std::string& path) {
  auto in = csv::open_input(path);
  return read_prior_table(in, path);
}

// ---------------------------------------------------------------------------
// grid CSV: rows in (t, lead) lexicographic order, estimate blank when
// missing. The file does not carry the grid kind; the reader is told what
// the file is supposed to contain and validates accordingly.

inline void write_grid(const WinProbGrid& grid, std::ostream& out) {
  out << "t,lead,estimate,N,n\n";
  for (int t = 0; t < kRegulationSeconds; ++t) {
    for (int lead = -kMaxLead; lead <= kMaxLead; ++lead) {
      const CellCounts& counts = grid.counts(t, lead);
      out << t << ',' << lead << ',';
      if (grid.has_estimate(t, lead)) out << csv::format(grid.estimate(t, lead));
      out << ',' << counts.games << ',' << counts.wins << '\n';
    }
  }
}

inline void write_grid(const WinProbGrid& grid, const std::string& path) {
  auto out = csv::open_output(path);
  write_grid(grid, out);
}

inline WinProbGrid read_grid(std::istream& in, GridKind kind,
                             const std::string& name = "grid") {
  csv::Reader reader(in, name);
  reader.expect_header("t,lead,estimate,N,n");
  WinProbGrid grid(kind);
  std::vector<bool> seen(std::size_t{kRegulationSeconds} * kLeadSpan, false);
  std::size_t n_rows = 0;
  std::vector<std::string> fields;
  while (reader.next_row(fields)) {
    reader.require_fields(fields, 5);
    const int t = int(reader.parse_int(fields[0], "t"));
    const int lead = int(reader.parse_int(fields[1], "lead"));
    if (!valid_clock(t)) reader.fail("t outside [0, 2879]");
    if (!valid_lead(lead)) reader.fail("lead outside [-58, 58]");
    if (seen[WinProbGrid::index(t, lead)]) {
      reader.fail("duplicate cell t=" + fields[0] + " lead=" + fields[1]);
    }
    seen[WinProbGrid::index(t, lead)] = true;
    ++n_rows;

    CellCounts counts;
    counts.games = std::int32_t(reader.parse_int(fields[3], "N"));
    counts.wins = std::int32_t(reader.parse_int(fields[4], "n"));
    if (counts.games < 0 || counts.wins < 0 || counts.wins > counts.games) {
      reader.fail("counts must satisfy 0 <= n <= N");
    }
    if (fields[2].empty()) {
      if (kind != GridKind::kMle) {
        reader.fail(std::string(to_string(kind)) + " grid has a missing estimate");
      }
      if (counts.games != 0) reader.fail("missing estimate with N > 0");
      grid.set_missing(t, lead, counts);
    } else {
      const double estimate = reader.parse_double(fields[2], "estimate");
      if (!(estimate >= 0.0 && estimate <= 1.0)) {
        reader.fail("estimate outside [0, 1]");
      }
      if (kind == GridKind::kMle && counts.games == 0) {
        reader.fail("mle grid has an estimate with N = 0");
      }
      grid.set_cell(t, lead, estimate, counts);
    }
  }
  const std::size_t expected = std::size_t{kRegulationSeconds} * kLeadSpan;
  if (n_rows != expected) {
    throw InputError(name + ": grid has " + std::to_string(n_rows) + " cells, expected " +
                     std::to_string(expected));
  }
  return grid;
}

inline WinProbGrid read_grid(const std::string& path, GridKind kind) {
  auto in = csv::open_input(path);
  return read_grid(in, kind, path);
}

// ---------------------------------------------------------------------------
// weights CSV: one row per coefficient, in family order

inline void write_weight_model(const WeightModel& model, std::ostream& out) {
  out << "family,name,value\n";
  const auto& names = coefficient_names(model.family);
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << to_string(model.family) << ',' << names[i] << ','
        << csv::format(model.coefficients[i]) << '\n';
  }
}

inline void write_weight_model(const WeightModel& model, const std::string& path) {
  auto out = csv::open_output(path);
  write_weight_model(model, out);
}

inline std::optional<WeightFamily> parse_weight_family(std::string token) {
  std::transform(token.begin(), token.end(), token.begin(),
                 [](unsigned char c) { return char(std::toupper(c)); });
  if (token == "B1") return WeightFamily::kB1;
  if (token == "B2") return WeightFamily::kB2;
  if (token == "B3") return WeightFamily::kB3;
  return std::nullopt;
}

inline WeightModel read_weight_model(std::istream& in,
                                     const std::string& name = "weights") {
  csv::Reader reader(in, name);
  reader.expect_header("family,name,value");
  std::optional<WeightFamily> family;
  std::map<std::string, double> values;
  std::vector<std::string> fields;
  while (reader.next_row(fields)) {
    reader.require_fields(fields, 3);
    const auto row_family = parse_weight_family(fields[0]);
    if (!row_family) reader.fail("unknown weight family '" + fields[0] + "'");
    if (family && *family != *row_family) reader.fail("mixed weight families");
    family = row_family;
    const auto& names = coefficient_names(*family);
    if (std::find(names.begin(), names.end(), fields[1]) == names.end()) {
      reader.fail("unknown coefficient '" + fields[1] + "' for family " + fields[0]);
    }
    if (!values.emplace(fields[1], reader.parse_double(fields[2], "value")).second) {
      reader.fail("duplicate coefficient '" + fields[1] + "'");
    }
  }
  if (!family) throw InputError(name + ": no coefficient rows");
  std::vector<double> coefficients;
  for (const std::string& coeff : coefficient_names(*family)) {
    const auto it = values.find(coeff);
    if (it == values.end()) {
      throw InputError(name + ": missing coefficient '" + coeff + "'");
    }
    coefficients.push_back(it->second);
  }
  return WeightModel(*family, std::move(coefficients));
}

inline WeightModel read_weight_model(const std::string& path) {
  auto in = csv::open_input(path);
  return read_weight_model(in, path);
}

// ---------------------------------------------------------------------------
// evaluation report CSV: one row per model, checkpoint columns from the
// report's checkpoint set, plus a trailing note column for annotations

inline void write_report(const EvaluationReport& report, std::ostream& out) {
  out << "model,overall_brier,Q";
  for (int minutes : report.checkpoint_minutes) out << ",ckpt" << minutes;
  out << ",note\n";
  for (const EvaluationEntry& entry : report.entries) {
    out << entry.label << ',';
    if (entry.overall_brier) out << csv::format(*entry.overall_brier);
    out << ',' << entry.observations;
    for (int minutes : report.checkpoint_minutes) {
      out << ',';
      const auto it = entry.checkpoint_brier.find(minutes);
      if (it != entry.checkpoint_brier.end() && it->second) {
        out << csv::format(*it->second);
      }
    }
    out << ',' << entry.annotation << '\n';
  }
}

inline void write_report(const EvaluationReport& report, const std::string& path) {
  auto out = csv::open_output(path);
  write_report(report, out);
}

inline EvaluationReport read_report(std::istream& in,
                                    const std::string& name = "report") {
  csv::Reader reader(in, name);
  std::vector<std::string> fields;
  if (!reader.next_row(fields)) throw InputError(name + ": missing header");
  if (fields.size() < 4 || fields[0] != "model" || fields[1] != "overall_brier" ||
      fields[2] != "Q" || fields.back() != "note") {
    reader.fail("bad report header");
  }
  EvaluationReport report;
  for (std::size_t i = 3; i + 1 < fields.size(); ++i) {
    if (fields[i].rfind("ckpt", 0) != 0) reader.fail("bad checkpoint column '" + fields[i] + "'");
    report.checkpoint_minutes.push_back(
        int(reader.parse_int(fields[i].substr(4), "checkpoint minutes")));
  }
  const std::size_t n_fields = fields.size();
  while (reader.next_row(fields)) {
    reader.require_fields(fields, n_fields);
    EvaluationEntry entry;
    entry.label = fields[0];
    if (!fields[1].empty()) {
      entry.overall_brier = reader.parse_double(fields[1], "overall_brier");
    }
    entry.observations = reader.parse_int(fields[2], "Q");
    for (std::size_t i = 0; i < report.checkpoint_minutes.size(); ++i) {
      const std::string& field = fields[3 + i];
      entry.checkpoint_brier[report.checkpoint_minutes[i]] =
          field.empty() ? std::optional<double>()
                        : std::optional<double>(reader.parse_double(field, "checkpoint"));
    }
    entry.annotation = fields[n_fields - 1];
    report.entries.push_back(std::move(entry));
  }
  return report;
}

inline EvaluationReport read_report(const std::string& path) {
  auto in = csv::open_input(path);
  return read_report(in, path);
}

// ---------------------------------------------------------------------------
// fit report CSV (diagnostics written next to a fitted weights file)

inline void write_fit_report(const FitResult& result, std::ostream& out) {
  out << "family,brier,converged,iterations\n";
  out << to_string(result.model.family) << ',' << csv::format(result.brier) << ','
      << (result.converged ? "true" : "false") << ',' << result.iterations << '\n';
}

inline void write_fit_report(const FitResult& result, const std::string& path) {
  auto out = csv::open_output(path);
  write_fit_report(result, out);
}

// ---------------------------------------------------------------------------
// trajectory CSV: per-second rows, one value column per model label

inline void write_trajectory(const TrajectoryTable& table, std::ostream& out) {
  out << "t,lead";
  for (const std::string& label : table.labels) {
    if (label.empty() || label.find(',') != std::string::npos) {
      throw InputError("trajectory label '" + label + "' is not a valid column name");
    }
    out << ',' << label;
  }
  out << '\n';
  for (const TrajectoryRow& row : table.rows) {
    out << row.t << ',' << row.lead;
    for (const auto& value : row.values) {
      out << ',';
      if (value) out << csv::format(*value);
    }
    out << '\n';
  }
}

inline void write_trajectory(const TrajectoryTable& table, const std::string& path) {
  auto out = csv::open_output(path);
  write_trajectory(table, out);
}

inline TrajectoryTable read_trajectory(std::istream& in,
                                       const std::string& name = "trajectory") {
  csv::Reader reader(in, name);
  std::vector<std::string> fields;
  if (!reader.next_row(fields)) throw InputError(name + ": missing header");
  if (fields.size() < 2 || fields[0] != "t" || fields[1] != "lead") {
    reader.fail("bad trajectory header");
  }
  TrajectoryTable table;
  table.labels.assign(fields.begin() + 2, fields.end());
  const std::size_t n_fields = fields.size();
  while (reader.next_row(fields)) {
    reader.require_fields(fields, n_fields);
    TrajectoryRow row;
    row.t = int(reader.parse_int(fields[0], "t"));
    row.lead = int(reader.parse_int(fields[1], "lead"));
    for (std::size_t i = 2; i < n_fields; ++i) {
      row.values.push_back(fields[i].empty()
                               ? std::optional<double>()
                               : std::optional<double>(
                                     reader.parse_double(fields[i], "probability")));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline TrajectoryTable read_trajectory(const std::string& path) {
  auto in = csv::open_input(path);
  return read_trajectory(in, path);
}

// Output paths written within one run must not collide.
inline void ensure_distinct_paths(const std::vector<std::string>& paths) {
  std::set<std::string> seen;
  for (const std::string& path : paths) {
    if (path.empty()) continue;
    if (!seen.insert(path).second) {
      throw InputError("output path '" + path + "' is used more than once");
    }
  }
}

}  // namespace winprob::store
