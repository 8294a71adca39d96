#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "seqbell/errors.hpp"
#include "seqbell/robustness.hpp"

using namespace seqbell;

namespace {

OptimizerConfig quick(int restarts, std::uint64_t seed = 5) {
    OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("supported functionals") {
    const auto& capable = two_bob_capable();
    CHECK(capable == std::vector<std::string>{"chsh", "chain3", "gisin4", "dzc", "bg", "aiig1",
                                              "aiig2"});
    for (const char* name : {"chain4", "gisin3", "i3322"}) {
        CHECK_THROWS_AS(c_min(builtin(name), quick(4)), InvalidParameter);
        CHECK_THROWS_AS(w_min(builtin(name), quick(4)), InvalidParameter);
    }
    CHECK(std::string(kind_name(ThresholdKind::Concurrence)) == "concurrence");
    CHECK(std::string(kind_name(ThresholdKind::WernerW)) == "werner_w");
}

TEST_CASE("werner threshold for chsh matches the closed form") {
    // balanced sharing gives margin 2 sqrt2 * 0.8 * w - 2, crossing at
    // w = 0.88388; the bisection reports the feasible bracket end
    const ThresholdResult res = w_min(builtin("chsh"), quick(80));
    CHECK(res.kind == ThresholdKind::WernerW);
    CHECK(res.functional == "chsh");
    CHECK(res.hi - res.lo <= 0.005);
    CHECK(res.threshold == res.hi);
    CHECK(std::abs(res.threshold - 0.88388) <= 0.005);
    CHECK(res.restarts_used == 80);
}

TEST_CASE("concurrence threshold for chsh is small but positive") {
    // near-axis settings exploit the unit zz-correlation of the Schmidt
    // state, so feasibility extends to weak entanglement; the threshold
    // tracks where the optimizer's margin crosses the feasibility epsilon
    const ThresholdResult res = c_min(builtin("chsh"), quick(80));
    CHECK(res.kind == ThresholdKind::Concurrence);
    CHECK(res.hi - res.lo <= 0.005);
    CHECK(res.threshold == res.hi);
    CHECK(res.threshold > 0.0);
    CHECK(res.threshold < 0.5);
}

TEST_CASE("starved optimizer reports NeverFeasible") {
    OptimizerConfig starved = quick(1);
    starved.max_iters = 3; // cannot reach any violation in three simplex steps
    CHECK_THROWS_AS(w_min(builtin("chsh"), starved), NeverFeasible);
}

TEST_CASE("resolution is validated") {
    CHECK_THROWS_AS(w_min(builtin("chsh"), quick(4), 0.0), InvalidParameter);
    CHECK_THROWS_AS(w_min(builtin("chsh"), quick(4), 1.5), InvalidParameter);
}
