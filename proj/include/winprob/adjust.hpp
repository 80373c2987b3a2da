#pragma once

#include <algorithm>
#include <cmath>

#include "winprob/domain.hpp"

namespace winprob {

// How the pregame signal arrives: a ready probability, or a point spread
// converted through a normal margin model.
enum class PregameKind { kDirectProb, kPointSpread };

struct PregameSource {
  PregameKind kind = PregameKind::kDirectProb;
  double sigma = kDefaultSpreadSigma;  // margin stdev, point spreads only

  static constexpr double kDefaultSpreadSigma = 11.5;
};

// P(home margin > 0) for a predicted margin under a normal margin model:
// Phi(margin / sigma). Clamped away from 0 and 1 so degenerate pregame
// inputs cannot poison blends or Brier sums.
inline double spread_to_prob(double home_margin, double sigma) {
  if (!(sigma > 0.0)) throw InputError("spread sigma must be positive");
  const double p = 0.5 * std::erfc(-home_margin / (sigma * std::sqrt(2.0)));
  return std::clamp(p, 1e-6, 1.0 - 1e-6);
}

// Unclamped blend weight for the in-game estimate.
//   B1 = b*t
//   B2 = c1*t + c2*|lead|
//   B3 = d0 + d1*[lead==0] + d2*t + d3*|lead| + d4*lead^2
inline double weight(const WeightModel& model, int t, int lead) {
  const double abs_lead = std::abs(lead);
  const auto& c = model.coefficients;
  switch (model.family) {
    case WeightFamily::kB1:
      return c[0] * t;
    case WeightFamily::kB2:
      return c[0] * t + c[1] * abs_lead;
    case WeightFamily::kB3:
      return c[0] + (lead == 0 ? c[1] : 0.0) + c[2] * t + c[3] * abs_lead +
             c[4] * double(lead) * double(lead);
  }
  return 0.0;
}

// Coefficients fitted on 2012-18 NBA seasons; the library default.
inline WeightModel default_weight_model() {
  return {WeightFamily::kB3, {-1.10633, -0.02313, 0.00027, 0.06618, -0.00139}};
}

// Blend of pregame and in-game estimates with the weight clamped to [0, 1]:
// all pregame while the weight is nonpositive, all in-game once it reaches
// one, a convex combination between.
inline double adjusted_estimate(const WeightModel& model, double p_pregame,
                                double p_bayes, int t, int lead) {
  const double b = weight(model, t, lead);
  if (b <= 0.0) return p_pregame;
  if (b >= 1.0) return p_bayes;
  return (1.0 - b) * p_pregame + b * p_bayes;
}

// Cellwise adjusted grid for one fixed pregame probability. Used for
// surface exports and plots; game-level evaluation blends per game instead.
inline WinProbGrid build_adjusted_grid(const WinProbGrid& bayes,
                                       const WeightModel& model,
                                       double p_pregame) {
  if (bayes.kind() != GridKind::kBayes) {
    throw InputError("adjusted grid requires a bayes grid as input");
  }
  WinProbGrid grid(GridKind::kAdjusted);
  for (int t = 0; t < kRegulationSeconds; ++t) {
    for (int lead = -kMaxLead; lead <= kMaxLead; ++lead) {
      if (!bayes.has_estimate(t, lead)) {
        throw InputError("bayes grid is missing cell t=" + std::to_string(t) +
                         " lead=" + std::to_string(lead));
      }
      const double estimate =
          adjusted_estimate(model, p_pregame, bayes.estimate(t, lead), t, lead);
      grid.set_cell(t, lead, estimate, bayes.counts(t, lead));
    }
  }
  return grid;
}

}  // namespace winprob
