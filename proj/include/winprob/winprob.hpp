#pragma once

// In-game home-team win probability estimation for basketball play-by-play
// data: windowed (time, lead) count grids, beta-prior posterior means with
// a bucketed dynamic prior, a pregame/in-game blend, Brier evaluation, and
// a synthetic-game harness.

#include "winprob/adjust.hpp"
#include "winprob/csv.hpp"
#include "winprob/domain.hpp"
#include "winprob/eval.hpp"
#include "winprob/fit.hpp"
#include "winprob/grid.hpp"
#include "winprob/ingest.hpp"
#include "winprob/parallel.hpp"
#include "winprob/priors.hpp"
#include "winprob/rng.hpp"
#include "winprob/simgen.hpp"
#include "winprob/store.hpp"
