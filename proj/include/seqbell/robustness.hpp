#pragma once

#include <string>
#include <vector>

#include "seqbell/bell.hpp"
#include "seqbell/optimize.hpp"

namespace seqbell {

enum class ThresholdKind { Concurrence, WernerW };

const char* kind_name(ThresholdKind kind); // "concurrence" / "werner_w"

// Outcome of a feasibility bisection: two-Bob sharing is feasible at `hi`
// (the reported threshold) and infeasible at `lo`, with hi - lo <= the
// requested resolution.
struct ThresholdResult {
    std::string functional;
    ThresholdKind kind = ThresholdKind::Concurrence;
    double threshold = 1.0;
    double lo = 0.0;
    double hi = 1.0;
    int restarts_used = 0;
};

// The seven functionals admitting a two-Bob regime on the singlet.
const std::vector<std::string>& two_bob_capable();

// Smallest concurrence C (state cos(a)|00> + sin(a)|11>, C = sin 2a) at
// which two Bobs can still share a violation.  Bisection on C at the given
// resolution; every probe re-optimizes from scratch with the full restart
// budget.  Throws NeverFeasible if even C = 1 is infeasible.
ThresholdResult c_min(const BellFunctional& f, const OptimizerConfig& cfg, double resolution = 0.005);

// Smallest Werner weight w at which two Bobs can still share a violation.
ThresholdResult w_min(const BellFunctional& f, const OptimizerConfig& cfg, double resolution = 0.005);

} // namespace seqbell
