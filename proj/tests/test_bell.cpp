#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "seqbell/bell.hpp"
#include "seqbell/errors.hpp"
#include "seqbell/rng.hpp"

using namespace seqbell;

namespace {

CorrelationTable random_table(int na, int nb, SplitMix64& rng) {
    CorrelationTable t;
    t.corr.assign(na, std::vector<double>(nb));
    t.alice_marg.assign(na, 0.0);
    t.bob_marg.assign(nb, 0.0);
    for (int u = 0; u < na; ++u)
        for (int v = 0; v < nb; ++v) t.corr[u][v] = rng.uniform(-1.0, 1.0);
    for (int u = 0; u < na; ++u) t.alice_marg[u] = rng.uniform(-1.0, 1.0);
    for (int v = 0; v < nb; ++v) t.bob_marg[v] = rng.uniform(-1.0, 1.0);
    return t;
}

// Same quantity written in probabilities:  p(ab|uv) = (1 + a<A> + b<B> + ab<AB>)/4.
double prob_form_i3322(const CorrelationTable& t) {
    const auto pjoint = [&](int u, int v) {
        return (1 + t.alice_marg[u] + t.bob_marg[v] + t.corr[u][v]) / 4.0;
    };
    const auto pa = [&](int u) { return (1 + t.alice_marg[u]) / 2.0; };
    const auto pb = [&](int v) { return (1 + t.bob_marg[v]) / 2.0; };
    const double joint = pjoint(0, 0) + pjoint(0, 1) + pjoint(0, 2) + pjoint(1, 0) + pjoint(1, 1) -
                         pjoint(1, 2) + pjoint(2, 0) - pjoint(2, 1);
    return joint - pa(0) - 2 * pb(0) - pb(1);
}

double prob_form_bg(const CorrelationTable& t) {
    const auto pjoint = [&](int u, int v) {
        return (1 + t.alice_marg[u] + t.bob_marg[v] + t.corr[u][v]) / 4.0;
    };
    const auto pa = [&](int u) { return (1 + t.alice_marg[u]) / 2.0; };
    const auto pb = [&](int v) { return (1 + t.bob_marg[v]) / 2.0; };
    double joint = 0.0;
    const int c[4][4] = {{1, 1, 1, 1}, {1, 1, 1, -1}, {1, 1, -2, 0}, {1, -1, 0, 0}};
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) joint += c[u][v] * pjoint(u, v);
    return joint - 2 * pa(0) - pa(1) - 2 * pb(0) - pb(1);
}

} // namespace

TEST_CASE("builtin catalogue") {
    const auto& names = builtin_names();
    REQUIRE(names.size() == 10);
    const double bounds[10] = {2, 4, 6, 5, 8, 0, 6, 0, 10, 6};
    for (std::size_t i = 0; i < names.size(); ++i) {
        const BellFunctional& f = builtin(names[i]);
        CHECK(f.name == names[i]);
        CHECK(f.classical_bound == bounds[i]);
        CHECK(lhv_bound(f) == f.classical_bound); // certified exactly
    }
    CHECK_THROWS_AS(builtin("nope"), UnknownInequality);
}

TEST_CASE("lhv bound by enumeration on hand-built functionals") {
    BellFunctional f;
    f.name = "one-correlator";
    f.n_alice = 1;
    f.n_bob = 1;
    f.corr_coeffs = {{Rational(1)}};
    f.alice_marg = {Rational(0)};
    f.bob_marg = {Rational(0)};
    f.use_abs = true;
    CHECK(lhv_bound(f) == 1.0);

    f.name = "marginals";
    f.alice_marg = {Rational(1)};
    f.bob_marg = {Rational(1)};
    CHECK(lhv_bound(f) == 3.0); // a + b + ab at a = b = +1

    BellFunctional chsh;
    chsh.name = "chsh-by-hand";
    chsh.n_alice = 2;
    chsh.n_bob = 2;
    chsh.corr_coeffs = {{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}};
    chsh.alice_marg = {Rational(0), Rational(0)};
    chsh.bob_marg = {Rational(0), Rational(0)};
    chsh.use_abs = true;
    CHECK(lhv_bound(chsh) == 2.0);
}

TEST_CASE("evaluation agrees between exact and flat coefficients") {
    SplitMix64 rng(101);
    for (const auto& name : builtin_names()) {
        const BellFunctional& f = builtin(name);
        const FlatFunctional flat = flatten(f);
        for (int i = 0; i < 20; ++i) {
            const CorrelationTable t = random_table(f.n_alice, f.n_bob, rng);
            CHECK(evaluate(f, t) == doctest::Approx(evaluate(flat, t)).epsilon(1e-14));
        }
    }
}

TEST_CASE("chsh evaluation spot values") {
    const BellFunctional& f = builtin("chsh");
    CorrelationTable t;
    const double r = 1.0 / std::sqrt(2.0);
    t.corr = {{-r, -r}, {-r, r}};
    t.alice_marg = {0.0, 0.0};
    t.bob_marg = {0.0, 0.0};
    // singlet at the standard settings: |value| = 2 sqrt 2
    CHECK(evaluate(f, t) == doctest::Approx(2.0 * std::sqrt(2.0)));

    CorrelationTable bad;
    bad.corr = {{1.0}};
    bad.alice_marg = {0.0};
    bad.bob_marg = {0.0};
    CHECK_THROWS_AS(evaluate(f, bad), DimensionMismatch);
}

TEST_CASE("probability-form functionals match their correlator rewrite") {
    SplitMix64 rng(202);
    const BellFunctional& i3322 = builtin("i3322");
    const BellFunctional& bg = builtin("bg");
    CHECK_FALSE(i3322.use_abs); // one-sided inequalities
    CHECK_FALSE(bg.use_abs);
    for (int i = 0; i < 200; ++i) {
        const CorrelationTable t3 = random_table(3, 3, rng);
        CHECK(evaluate(i3322, t3) == doctest::Approx(prob_form_i3322(t3)).epsilon(1e-12));
        const CorrelationTable t4 = random_table(4, 4, rng);
        CHECK(evaluate(bg, t4) == doctest::Approx(prob_form_bg(t4)).epsilon(1e-12));
    }
}

TEST_CASE("rational arithmetic") {
    CHECK(rational_from_double(0.5) == Rational(1, 2));
    CHECK(rational_from_double(-0.25) == Rational(-1, 4));
    CHECK(rational_from_double(3.0) == Rational(3));
    CHECK(rational_from_double(0.0) == Rational(0));
    for (const double x : {1.0 / 3.0, 0.1, -2.75, 1e-3}) {
        CHECK(rational_from_double(x).to_double() == x); // exact round trip
    }
    CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
    CHECK((Rational(2, 4) * Rational(2, 3)) == Rational(1, 3));
    CHECK(-Rational(1, 2) == Rational(-1, 2));
}

TEST_CASE("custom functional file") {
    const char* path = "custom_functional_test.json";
    {
        std::ofstream out(path);
        out << R"({"name":"double-chsh","corr":[[2,2],[2,-2]],"bound":4})";
    }
    const BellFunctional f = load_functional_file(path);
    CHECK(f.name == "double-chsh");
    CHECK(f.n_alice == 2);
    CHECK(f.classical_bound == 4.0);
    CHECK(lhv_bound(f) == 4.0);
    CHECK(f.use_abs); // defaulted

    {
        std::ofstream out(path);
        out << R"({"corr":[[1,1],[1)";
    }
    CHECK_THROWS_AS(load_functional_file(path), InvalidParameter);
    {
        std::ofstream out(path);
        out << R"({"corr":[[1,1],[1,-1]]})"; // missing bound
    }
    CHECK_THROWS_AS(load_functional_file(path), InvalidParameter);
    CHECK_THROWS_AS(load_functional_file("no_such_file.json"), InvalidParameter);
    std::remove(path);
}
