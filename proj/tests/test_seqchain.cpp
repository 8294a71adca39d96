#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "seqbell/errors.hpp"
#include "seqbell/rng.hpp"
#include "seqbell/seqchain.hpp"

using namespace seqbell;

namespace {

constexpr double kPi = std::numbers::pi;

// Standard planar CHSH chain: Alice along z and x, every Bob at +-45 degrees
// in the xz-plane.
Scenario chsh_chain(const std::vector<double>& lambdas) {
    Scenario s;
    s.state = StateSpec::singlet();
    s.functional = builtin("chsh");
    s.alice_dirs = {{0.0, 0.0}, {kPi / 2, 0.0}};
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        s.bob_dirs.push_back({{kPi / 4, 0.0}, {kPi / 4, kPi}});
    s.lambdas = lambdas;
    return s;
}

Scenario random_scenario(const BellFunctional& f, const StateSpec& state, int k, SplitMix64& rng) {
    Scenario s;
    s.state = state;
    s.functional = f;
    for (int u = 0; u < f.n_alice; ++u)
        s.alice_dirs.push_back({rng.uniform(0.0, kPi), rng.uniform(0.0, 2 * kPi)});
    for (int i = 0; i < k; ++i) {
        std::vector<Direction> dirs;
        for (int v = 0; v < f.n_bob; ++v)
            dirs.push_back({rng.uniform(0.0, kPi), rng.uniform(0.0, 2 * kPi)});
        s.bob_dirs.push_back(std::move(dirs));
    }
    for (int i = 0; i + 1 < k; ++i) s.lambdas.push_back(rng.uniform(0.1, 0.99));
    s.lambdas.push_back(1.0);
    return s;
}

} // namespace

TEST_CASE("scenario validation") {
    Scenario s = chsh_chain({0.8, 1.0});
    CHECK_NOTHROW(validate(s));

    Scenario bad = s;
    bad.alice_dirs.pop_back();
    CHECK_THROWS_AS(validate(bad), DimensionMismatch);

    bad = s;
    bad.bob_dirs[1].push_back({0.0, 0.0});
    CHECK_THROWS_AS(validate(bad), DimensionMismatch);

    bad = s;
    bad.lambdas = {0.8};
    CHECK_THROWS_AS(validate(bad), DimensionMismatch);

    bad = s;
    bad.lambdas = {0.8, 0.99}; // final Bob must be sharp
    CHECK_THROWS_AS(validate(bad), InvalidParameter);

    bad = s;
    bad.lambdas = {0.0, 1.0};
    CHECK_THROWS_AS(validate(bad), InvalidParameter);

    bad = s;
    bad.bob_dirs.clear();
    bad.lambdas.clear();
    CHECK_THROWS_AS(validate(bad), InvalidParameter);
}

TEST_CASE("bob_table is 1-based and guarded") {
    const Scenario s = chsh_chain({0.8, 1.0});
    CHECK_THROWS_AS(bob_table(s, 0), IndexOutOfRange);
    CHECK_THROWS_AS(bob_table(s, 3), IndexOutOfRange);
    CHECK_NOTHROW(bob_table(s, 2));
}

TEST_CASE("chsh chain matches the closed form") {
    for (const auto& lambdas :
         {std::vector<double>{1.0}, {0.8, 1.0}, {0.6, 1.0}, {0.77, 0.94, 1.0}}) {
        const Scenario s = chsh_chain(lambdas);
        const ValueVector vv = value_vector(s);
        const auto expected = oracles::chsh_chain_values(lambdas);
        REQUIRE(vv.values.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(vv.values[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
    // sharp single Bob reaches the quantum maximum
    CHECK(value_vector(chsh_chain({1.0})).values[0] ==
          doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("violation flags are strict") {
    const Scenario s = chsh_chain({0.8, 1.0});
    const ValueVector vv = value_vector(s);
    for (std::size_t i = 0; i < vv.values.size(); ++i)
        CHECK(vv.violations[i] == (vv.values[i] > s.functional.classical_bound));
}

TEST_CASE("analytic singlet path equals the density path") {
    SplitMix64 rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& name = builtin_names()[trial % builtin_names().size()];
        const int k = 1 + trial % 3;
        const Scenario s = random_scenario(builtin(name), StateSpec::singlet(), k, rng);
        const ValueVector dens = value_vector(s);
        const ValueVector ana = analytic_value_vector(s);
        REQUIRE(dens.values.size() == ana.values.size());
        for (std::size_t i = 0; i < dens.values.size(); ++i)
            CHECK(dens.values[i] == doctest::Approx(ana.values[i]).epsilon(1e-8));
    }
    // analytic path is singlet-only
    const Scenario w = random_scenario(builtin("chsh"), StateSpec::werner(0.9), 2, rng);
    CHECK_THROWS_AS(analytic_value_vector(w), UnsupportedState);
}

TEST_CASE("bloch picture equals the density path on every family") {
    SplitMix64 rng(505);
    const StateSpec states[] = {StateSpec::singlet(), StateSpec::schmidt(0.35),
                                StateSpec::werner(0.85)};
    for (int trial = 0; trial < 150; ++trial) {
        const auto& name = builtin_names()[trial % builtin_names().size()];
        const Scenario s =
            random_scenario(builtin(name), states[trial % 3], 1 + trial % 3, rng);
        const ValueVector dens = value_vector(s);
        const ValueVector fast = bloch_value_vector(s);
        for (std::size_t i = 0; i < dens.values.size(); ++i)
            CHECK(dens.values[i] == doctest::Approx(fast.values[i]).epsilon(1e-10));
    }
}

TEST_CASE("replay presets reproduce their recorded values") {
    const auto& names = replay_preset_names();
    REQUIRE(names.size() == 3);
    for (const auto& name : names) {
        const ReplayPreset& preset = replay_preset(name);
        CHECK_NOTHROW(validate(preset.scenario));
        const ValueVector vv = value_vector(preset.scenario);
        REQUIRE(vv.values.size() == preset.targets.size());
        for (std::size_t i = 0; i < vv.values.size(); ++i)
            CHECK(std::abs(vv.values[i] - preset.targets[i]) <= preset.tolerance);
    }
    CHECK_THROWS_AS(replay_preset("chain9"), UnknownPreset);
}
