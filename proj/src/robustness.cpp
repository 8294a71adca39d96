#include "seqbell/robustness.hpp"

#include <algorithm>
#include <cmath>

#include "seqbell/errors.hpp"
#include "seqbell/states.hpp"

namespace seqbell {

const char* kind_name(ThresholdKind kind) {
    return kind == ThresholdKind::Concurrence ? "concurrence" : "werner_w";
}

const std::vector<std::string>& two_bob_capable() {
    static const std::vector<std::string> names = {"chsh", "chain3", "gisin4", "dzc",
                                                   "bg",   "aiig1",  "aiig2"};
    return names;
}

namespace {

StateSpec state_at(ThresholdKind kind, double p) {
    if (kind == ThresholdKind::Concurrence) return StateSpec::schmidt(std::asin(p) / 2.0);
    return StateSpec::werner(p);
}

ThresholdResult bisect(const BellFunctional& f, ThresholdKind kind, const OptimizerConfig& cfg,
                       double resolution) {
    const auto& capable = two_bob_capable();
    if (std::find(capable.begin(), capable.end(), f.name) == capable.end())
        throw InvalidParameter("robustness: '" + f.name + "' has no two-Bob regime; supported: chsh, chain3, gisin4, dzc, bg, aiig1, aiig2");
    if (!(resolution > 0.0 && resolution < 1.0))
        throw InvalidParameter("robustness: resolution must lie in (0, 1)");

    const auto feasible_at = [&](double p) {
        return sharing_margin(state_at(kind, p), f, 2, cfg).feasible;
    };

    ThresholdResult out;
    out.functional = f.name;
    out.kind = kind;
    if (!feasible_at(1.0))
        throw NeverFeasible("robustness: '" + f.name + "' infeasible even at parameter 1; raise the restart budget");

    // At parameter 0 the state is separable (product or maximally mixed) and
    // admits a local model outright, so the lower bracket end needs no probe.
    double lo = 0.0, hi = 1.0;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        if (feasible_at(mid))
            hi = mid;
        else
            lo = mid;
    }
    out.lo = lo;
    out.hi = hi;
    out.threshold = hi;
    out.restarts_used = cfg.restarts;
    return out;
}

} // namespace

ThresholdResult c_min(const BellFunctional& f, const OptimizerConfig& cfg, double resolution) {
    return bisect(f, ThresholdKind::Concurrence, cfg, resolution);
}

ThresholdResult w_min(const BellFunctional& f, const OptimizerConfig& cfg, double resolution) {
    return bisect(f, ThresholdKind::WernerW, cfg, resolution);
}

} // namespace seqbell
