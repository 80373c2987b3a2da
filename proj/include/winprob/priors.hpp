#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "winprob/domain.hpp"

namespace winprob {

// One prior bucket: an elapsed-time range crossed with a nonnegative-lead
// range. Both endpoints inclusive; lead_hi == kMaxLead marks an open-ended
// row (">=lead_lo").
struct PriorBucket {
  int t_lo = 0;
  int t_hi = 0;
  int lead_lo = 0;
  int lead_hi = 0;

  bool contains(int t, int abs_lead) const {
    return t >= t_lo && t <= t_hi && abs_lead >= lead_lo && abs_lead <= lead_hi;
  }

  std::string time_label() const {
    return std::to_string(t_lo) + "-" + std::to_string(t_hi);
  }
  std::string lead_label() const {
    if (lead_hi >= kMaxLead) return ">=" + std::to_string(lead_lo);
    return std::to_string(lead_lo) + "-" + std::to_string(lead_hi);
  }

  friend auto operator<=>(const PriorBucket&, const PriorBucket&) = default;
};

struct PriorRow {
  PriorBucket bucket;
  BetaParams params;

  friend bool operator==(const PriorRow&, const PriorRow&) = default;
};

// Beta shape parameters from a sample mean and sample variance of win
// probabilities, by matching the first two beta moments.
inline BetaParams fit_beta_moments(double mean, double variance) {
  if (!(mean > 0.0) || !(mean < 1.0)) {
    throw InputError("survey mean " + std::to_string(mean) + " outside (0,1)");
  }
  if (!(variance > 0.0)) throw InputError("degenerate survey variance");
  if (variance >= mean * (1.0 - mean)) throw InputError("variance too large for beta");
  const double excess = mean * mean - mean + variance;  // < 0 here
  const double alpha = -mean * excess / variance;
  const double beta = (mean - 1.0) * excess / variance;
  return {alpha, beta};
}

// Bucketed map from (elapsed time, |lead|) to beta shape parameters.
// Rows must partition [0, 2879] x [0, 58] exactly; validated on build.
// Negative leads are served by swapping the two shape parameters.
class PriorTable {
 public:
  explicit PriorTable(std::vector<PriorRow> rows) : rows_(std::move(rows)) {
    index_.assign(std::size_t{kRegulationSeconds} * (kMaxLead + 1), kUnset);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const PriorBucket& b = rows_[r].bucket;
      if (b.t_lo < 0 || b.t_hi > kMaxClock || b.t_lo > b.t_hi || b.lead_lo < 0 ||
          b.lead_hi > kMaxLead || b.lead_lo > b.lead_hi) {
        throw InputError("prior row " + std::to_string(r + 1) + " out of range");
      }
      if (!(rows_[r].params.alpha > 0.0) || !(rows_[r].params.beta > 0.0)) {
        throw InputError("prior row " + std::to_string(r + 1) +
                         " has nonpositive shape parameters");
      }
      for (int t = b.t_lo; t <= b.t_hi; ++t) {
        for (int lead = b.lead_lo; lead <= b.lead_hi; ++lead) {
          auto& slot = index_[cell(t, lead)];
          if (slot != kUnset) {
            throw InputError("prior rows overlap at t=" + std::to_string(t) +
                             " lead=" + std::to_string(lead));
          }
          slot = static_cast<std::uint16_t>(r);
        }
      }
    }
    for (int t = 0; t <= kMaxClock; ++t) {
      for (int lead = 0; lead <= kMaxLead; ++lead) {
        if (index_[cell(t, lead)] == kUnset) {
          throw InputError("prior rows leave t=" + std::to_string(t) +
                           " lead=" + std::to_string(lead) + " uncovered");
        }
      }
    }
  }

  const std::vector<PriorRow>& rows() const { return rows_; }

  const PriorRow& row_at(int t, int abs_lead) const {
    return rows_[index_[cell(t, abs_lead)]];
  }

  friend bool operator==(const PriorTable& a, const PriorTable& b) {
    return a.rows_ == b.rows_;
  }

 private:
  static std::size_t cell(int t, int abs_lead) {
    return std::size_t(t) * (kMaxLead + 1) + std::size_t(abs_lead);
  }

  static constexpr std::uint16_t kUnset = 0xffff;
  std::vector<PriorRow> rows_;
  std::vector<std::uint16_t> index_;
};

// Prior for a signed lead: home leads read the row directly, away leads
// read it with the shape parameters reversed.
inline BetaParams lookup_prior(const PriorTable& table, int t, int lead) {
  const BetaParams& p = table.row_at(t, lead < 0 ? -lead : lead).params;
  return lead < 0 ? p.swapped() : p;
}

// Bundled default prior, imputed from an expert survey of NBA analysts.
// Ships with the library so the posterior-mean estimator runs without
// survey data.
inline const PriorTable& default_prior_table() {
  static const PriorTable table([] {
    const auto row = [](int t_lo, int t_hi, int lead_lo, int lead_hi, double a,
                        double b) {
      return PriorRow{{t_lo, t_hi, lead_lo, lead_hi}, {a, b}};
    };
    std::vector<PriorRow> rows{
        row(0, 360, 0, 9, 1, 1),
        row(0, 360, 10, 14, 18, 9),
        row(0, 360, 15, kMaxLead, 54, 6),
        row(361, 720, 0, 9, 1, 1),
        row(361, 720, 10, 19, 19, 7),
        row(361, 720, 20, kMaxLead, 34, 3),
        row(721, 1440, 0, 9, 1, 1),
        row(721, 1440, 10, 19, 18, 5),
        row(721, 1440, 20, kMaxLead, 51, 2),
        row(1441, 2160, 0, 9, 1, 1),
        row(1441, 2160, 10, 14, 22, 6),
        row(1441, 2160, 15, 19, 15, 2),
        row(1441, 2160, 20, kMaxLead, 71, 2),
        row(2161, 2520, 0, 9, 1, 1),
        row(2161, 2520, 10, 14, 22, 3),
        row(2161, 2520, 15, 19, 25, 2),
        row(2161, 2520, 20, kMaxLead, 133, 2),
        row(2521, 2700, 0, 9, 1, 1),
        row(2521, 2700, 10, 14, 46, 3),
        row(2521, 2700, 15, 19, 48, 1),
        row(2521, 2700, 20, kMaxLead, 133, 1),
        row(2701, 2820, 0, 4, 1, 1),
        row(2701, 2820, 5, 9, 10, 2),
        row(2701, 2820, 10, 14, 104, 3),
        row(2701, 2820, 15, kMaxLead, 328, 2),
        row(2821, kMaxClock, 0, 2, 1, 1),
        row(2821, kMaxClock, 3, 4, 10, 2),
        row(2821, kMaxClock, 5, 9, 17, 1),
        row(2821, kMaxClock, 10, kMaxLead, 167, 1),
    };
    return rows;
  }());
  return table;
}

// Survey samples pooled per bucket.
using SurveyGroups = std::map<PriorBucket, std::vector<double>>;

// Fits each bucket of `fallback`'s geometry from its survey group's sample
// mean and (n-1)-denominator sample variance. Buckets without survey data
// keep the fallback parameters; buckets whose fit fails keep the fallback
// parameters and record a warning.
inline PriorTable build_prior_table(const SurveyGroups& survey,
                                    const PriorTable& fallback,
                                    Warnings* warnings = nullptr) {
  std::vector<PriorRow> rows;
  rows.reserve(fallback.rows().size());
  for (const PriorRow& base : fallback.rows()) {
    PriorRow out = base;
    if (const auto it = survey.find(base.bucket); it != survey.end()) {
      const std::vector<double>& probs = it->second;
      try {
        if (probs.size() < 2) throw InputError("fewer than 2 responses");
        double sum = 0.0;
        for (double p : probs) sum += p;
        const double mean = sum / double(probs.size());
        double ss = 0.0;
        for (double p : probs) ss += (p - mean) * (p - mean);
        const double variance = ss / double(probs.size() - 1);
        out.params = fit_beta_moments(mean, variance);
      } catch (const InputError& err) {
        if (warnings) {
          warnings->push_back("prior bucket (" + base.bucket.time_label() + ", " +
                              base.bucket.lead_label() +
                              ") kept fallback parameters: " + err.what());
        }
      }
    }
    rows.push_back(out);
  }
  return PriorTable(std::move(rows));
}

}  // namespace winprob
