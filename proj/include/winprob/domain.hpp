#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace winprob {

// Regulation lattice bounds: seconds 0..2879, leads -58..58.
inline constexpr int kRegulationSeconds = 2880;
inline constexpr int kMaxClock = kRegulationSeconds - 1;
inline constexpr int kMaxLead = 58;
inline constexpr int kLeadSpan = 2 * kMaxLead + 1;

// Thrown on malformed or contradictory input; the CLI maps it to exit 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Warnings = std::vector<std::string>;

inline bool valid_clock(int t) { return t >= 0 && t <= kMaxClock; }
inline bool valid_lead(int lead) { return lead >= -kMaxLead && lead <= kMaxLead; }

inline int clamp_lead(int lead) {
  if (lead > kMaxLead) return kMaxLead;
  if (lead < -kMaxLead) return -kMaxLead;
  return lead;
}

// Per-second home lead over regulation, clamped to [-58, 58].
using LeadSeries = std::vector<std::int8_t>;

struct GameRecord {
  std::string game_id;
  LeadSeries lead_series;  // size kRegulationSeconds, lead_series[0] == 0
  bool home_win = false;   // final outcome, overtime included
  std::optional<double> pregame_home_prob;  // in (0, 1) when present
};

struct CellCounts {
  std::int32_t games = 0;  // N: games passing through the window
  std::int32_t wins = 0;   // n: home wins among them, 0 <= n <= N

  friend bool operator==(const CellCounts&, const CellCounts&) = default;
};

struct BetaParams {
  double alpha = 1.0;
  double beta = 1.0;

  double mean() const { return alpha / (alpha + beta); }
  double variance() const {
    const double s = alpha + beta;
    return alpha * beta / (s * s * (s + 1.0));
  }
  BetaParams swapped() const { return {beta, alpha}; }

  friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

enum class GridKind { kMle, kBayes, kAdjusted };

inline const char* to_string(GridKind kind) {
  switch (kind) {
    case GridKind::kMle: return "mle";
    case GridKind::kBayes: return "bayes";
    case GridKind::kAdjusted: return "adjusted";
  }
  return "?";
}

// Dense (t, lead) lattice of win-probability estimates with the window
// counts they were computed from. Missing estimates are stored as NaN.
class WinProbGrid {
 public:
  explicit WinProbGrid(GridKind kind)
      : kind_(kind),
        estimates_(std::size_t{kRegulationSeconds} * kLeadSpan,
                   std::numeric_limits<double>::quiet_NaN()),
        counts_(std::size_t{kRegulationSeconds} * kLeadSpan) {}

  GridKind kind() const { return kind_; }

  static std::size_t index(int t, int lead) {
    return std::size_t(t) * kLeadSpan + std::size_t(lead + kMaxLead);
  }

  bool has_estimate(int t, int lead) const {
    return !std::isnan(estimates_[index(t, lead)]);
  }
  // NaN when missing.
  double estimate(int t, int lead) const { return estimates_[index(t, lead)]; }
  const CellCounts& counts(int t, int lead) const { return counts_[index(t, lead)]; }

  void set_cell(int t, int lead, double estimate, CellCounts counts) {
    estimates_[index(t, lead)] = estimate;
    counts_[index(t, lead)] = counts;
  }
  void set_missing(int t, int lead, CellCounts counts) {
    estimates_[index(t, lead)] = std::numeric_limits<double>::quiet_NaN();
    counts_[index(t, lead)] = counts;
  }

  friend bool operator==(const WinProbGrid& a, const WinProbGrid& b) {
    if (a.kind_ != b.kind_ || a.counts_ != b.counts_) return false;
    for (std::size_t i = 0; i < a.estimates_.size(); ++i) {
      const bool ma = std::isnan(a.estimates_[i]);
      const bool mb = std::isnan(b.estimates_[i]);
      if (ma != mb) return false;
      if (!ma && a.estimates_[i] != b.estimates_[i]) return false;
    }
    return true;
  }

 private:
  GridKind kind_;
  std::vector<double> estimates_;
  std::vector<CellCounts> counts_;
};

enum class WeightFamily { kB1, kB2, kB3 };

inline const char* to_string(WeightFamily family) {
  switch (family) {
    case WeightFamily::kB1: return "B1";
    case WeightFamily::kB2: return "B2";
    case WeightFamily::kB3: return "B3";
  }
  return "?";
}

inline std::size_t coefficient_count(WeightFamily family) {
  switch (family) {
    case WeightFamily::kB1: return 1;  // b
    case WeightFamily::kB2: return 2;  // c1, c2
    case WeightFamily::kB3: return 5;  // d0..d4
  }
  return 0;
}

inline const std::vector<std::string>& coefficient_names(WeightFamily family) {
  static const std::vector<std::string> b1{"b"};
  static const std::vector<std::string> b2{"c1", "c2"};
  static const std::vector<std::string> b3{"d0", "d1", "d2", "d3", "d4"};
  switch (family) {
    case WeightFamily::kB1: return b1;
    case WeightFamily::kB2: return b2;
    case WeightFamily::kB3: return b3;
  }
  return b3;
}

// Pregame/in-game mixing weight: a blend family plus its coefficients.
struct WeightModel {
  WeightFamily family = WeightFamily::kB1;
  std::vector<double> coefficients;

  WeightModel() : coefficients{0.0} {}
  WeightModel(WeightFamily f, std::vector<double> coeffs)
      : family(f), coefficients(std::move(coeffs)) {
    if (coefficients.size() != coefficient_count(family)) {
      throw InputError("weight model " + std::string(to_string(family)) +
                       " expects " + std::to_string(coefficient_count(family)) +
                       " coefficients, got " + std::to_string(coefficients.size()));
    }
  }

  friend bool operator==(const WeightModel&, const WeightModel&) = default;
};

// Brier evaluation checkpoint, labeled by whole minutes remaining.
struct Checkpoint {
  int minutes_remaining = 0;

  int elapsed() const { return kRegulationSeconds - 60 * minutes_remaining; }

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

// Table 4-style default: 24, 12, 6, 3, 1 minutes remaining.
inline std::vector<Checkpoint> default_checkpoints() {
  return {{24}, {12}, {6}, {3}, {1}};
}

struct EvaluationEntry {
  std::string label;
  std::optional<double> overall_brier;
  long long observations = 0;  // Q
  std::map<int, std::optional<double>> checkpoint_brier;  // minutes -> score
  std::string annotation;  // nonempty when scoring failed

  friend bool operator==(const EvaluationEntry&, const EvaluationEntry&) = default;
};

struct EvaluationReport {
  std::vector<int> checkpoint_minutes;
  std::vector<EvaluationEntry> entries;

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

}  // namespace winprob
