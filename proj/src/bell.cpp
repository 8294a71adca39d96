#include "seqbell/bell.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>

namespace seqbell {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw InvalidParameter("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational operator+(const Rational& a, const Rational& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}

Rational operator*(const Rational& a, const Rational& b) {
    return {a.num * b.num, a.den * b.den};
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw InvalidParameter("rational_from_double: non-finite value");
    if (x == 0.0) return {0, 1};

    int exp = 0;
    const double mant = std::frexp(x, &exp); // x = mant * 2^exp, |mant| in [0.5, 1)
    // 2^53 * mant is an exact integer for every finite double.
    long long num = static_cast<long long>(std::ldexp(mant, 53));
    long long shift = exp - 53;
    while (num != 0 && (num & 1) == 0 && shift < 0) {
        num >>= 1;
        ++shift;
    }
    if (shift >= 0) {
        if (shift > 10) throw InvalidParameter("rational_from_double: value too large for exact rational");
        return {num << shift, 1};
    }
    if (shift < -62) throw InvalidParameter("rational_from_double: value needs too fine a dyadic denominator");
    return {num, 1LL << (-shift)};
}

FlatFunctional flatten(const BellFunctional& f) {
    if (f.n_alice < 1 || f.n_alice > 4 || f.n_bob < 1 || f.n_bob > 4)
        throw DimensionMismatch("flatten: setting counts must lie in 1..4");
    FlatFunctional out;
    out.n_alice = f.n_alice;
    out.n_bob = f.n_bob;
    for (int u = 0; u < f.n_alice; ++u)
        for (int v = 0; v < f.n_bob; ++v) out.corr[u][v] = f.corr_coeffs[u][v].to_double();
    for (int u = 0; u < f.n_alice; ++u) out.alice_marg[u] = f.alice_marg[u].to_double();
    for (int v = 0; v < f.n_bob; ++v) out.bob_marg[v] = f.bob_marg[v].to_double();
    out.constant = f.constant.to_double();
    out.classical_bound = f.classical_bound;
    out.use_abs = f.use_abs;
    return out;
}

double evaluate(const FlatFunctional& f, const CorrelationTable& t) {
    if (static_cast<int>(t.corr.size()) != f.n_alice ||
        static_cast<int>(t.alice_marg.size()) != f.n_alice ||
        static_cast<int>(t.bob_marg.size()) != f.n_bob)
        throw DimensionMismatch("evaluate: table does not match functional dimensions");
    double s = f.constant;
    for (int u = 0; u < f.n_alice; ++u) {
        if (static_cast<int>(t.corr[u].size()) != f.n_bob)
            throw DimensionMismatch("evaluate: table does not match functional dimensions");
        for (int v = 0; v < f.n_bob; ++v) s += f.corr[u][v] * t.corr[u][v];
        s += f.alice_marg[u] * t.alice_marg[u];
    }
    for (int v = 0; v < f.n_bob; ++v) s += f.bob_marg[v] * t.bob_marg[v];
    return f.use_abs ? std::abs(s) : s;
}

double evaluate(const BellFunctional& f, const CorrelationTable& t) {
    return evaluate(flatten(f), t);
}

double lhv_bound(const BellFunctional& f) {
    const FlatFunctional flat = flatten(f);
    // Only deterministic local strategies are enumerated.  This suffices:
    // the functional is linear in the correlations/marginals, and every LHV
    // model is a convex mixture of deterministic assignments, so the
    // maximum over the whole local polytope is attained at one of its
    // 2^(n_alice+n_bob) vertices.
    double best = -std::numeric_limits<double>::infinity();
    const int na = 1 << flat.n_alice;
    const int nb = 1 << flat.n_bob;
    for (int ma = 0; ma < na; ++ma) {
        double a[4];
        for (int u = 0; u < flat.n_alice; ++u) a[u] = (ma >> u) & 1 ? 1.0 : -1.0;
        for (int mb = 0; mb < nb; ++mb) {
            double b[4];
            for (int v = 0; v < flat.n_bob; ++v) b[v] = (mb >> v) & 1 ? 1.0 : -1.0;
            double s = flat.constant;
            for (int u = 0; u < flat.n_alice; ++u) {
                for (int v = 0; v < flat.n_bob; ++v) s += flat.corr[u][v] * a[u] * b[v];
                s += flat.alice_marg[u] * a[u];
            }
            for (int v = 0; v < flat.n_bob; ++v) s += flat.bob_marg[v] * b[v];
            if (flat.use_abs) s = std::abs(s);
            best = std::max(best, s);
        }
    }
    return best;
}

namespace {

BellFunctional correlator_functional(const std::string& name, int na, int nb,
                                     const std::vector<std::vector<long long>>& coeffs, double bound) {
    BellFunctional f;
    f.name = name;
    f.n_alice = na;
    f.n_bob = nb;
    f.corr_coeffs.assign(na, std::vector<Rational>(nb));
    for (int u = 0; u < na; ++u)
        for (int v = 0; v < nb; ++v) f.corr_coeffs[u][v] = Rational(coeffs[u][v]);
    f.alice_marg.assign(na, Rational(0));
    f.bob_marg.assign(nb, Rational(0));
    f.constant = Rational(0);
    f.classical_bound = bound;
    f.use_abs = true;
    return f;
}

// Rewrite a "probability form" inequality
//   sum_uv joint[u][v] P(A_u=+, B_v=+) + sum_u am[u] P(A_u=+)
//     + sum_v bm[v] P(B_v=+)  <=  bound
// into correlator coefficients using the exact identities
//   P(A=+,B=+) = (1 + <A> + <B> + <AB>)/4 and P(A=+) = (1 + <A>)/2.
BellFunctional probability_functional(const std::string& name, int na, int nb,
                                      const std::vector<std::vector<long long>>& joint,
                                      const std::vector<long long>& am, const std::vector<long long>& bm,
                                      double bound) {
    BellFunctional f;
    f.name = name;
    f.n_alice = na;
    f.n_bob = nb;
    f.corr_coeffs.assign(na, std::vector<Rational>(nb));
    f.alice_marg.assign(na, Rational(0));
    f.bob_marg.assign(nb, Rational(0));
    f.constant = Rational(0);
    const Rational quarter(1, 4);
    const Rational half(1, 2);
    for (int u = 0; u < na; ++u)
        for (int v = 0; v < nb; ++v) {
            const Rational c = Rational(joint[u][v]) * quarter;
            f.corr_coeffs[u][v] = c;
            f.alice_marg[u] = f.alice_marg[u] + c;
            f.bob_marg[v] = f.bob_marg[v] + c;
            f.constant = f.constant + c;
        }
    for (int u = 0; u < na; ++u) {
        const Rational c = Rational(am[u]) * half;
        f.alice_marg[u] = f.alice_marg[u] + c;
        f.constant = f.constant + c;
    }
    for (int v = 0; v < nb; ++v) {
        const Rational c = Rational(bm[v]) * half;
        f.bob_marg[v] = f.bob_marg[v] + c;
        f.constant = f.constant + c;
    }
    f.classical_bound = bound;
    f.use_abs = false;
    return f;
}

std::map<std::string, BellFunctional> build_all() {
    std::map<std::string, BellFunctional> m;

    m["chsh"] = correlator_functional("chsh", 2, 2, {{1, 1}, {1, -1}}, 2.0);
    m["chain3"] = correlator_functional("chain3", 3, 3, {{1, 0, -1}, {1, 1, 0}, {0, 1, 1}}, 4.0);
    m["chain4"] = correlator_functional(
        "chain4", 4, 4, {{1, 0, 0, -1}, {1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}}, 6.0);
    m["gisin3"] = correlator_functional("gisin3", 3, 3, {{1, 1, 1}, {1, 1, -1}, {1, -1, -1}}, 5.0);
    m["gisin4"] = correlator_functional(
        "gisin4", 4, 4, {{1, 1, 1, 1}, {1, 1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, -1}}, 8.0);
    m["i3322"] = probability_functional("i3322", 3, 3, {{1, 1, 1}, {1, 1, -1}, {1, -1, 0}},
                                        {-1, 0, 0}, {-2, -1, 0}, 0.0);
    m["dzc"] = correlator_functional(
        "dzc", 4, 4, {{1, 1, 1, 1}, {1, 1, 1, -1}, {1, 1, -2, 0}, {1, -1, 0, 0}}, 6.0);
    m["bg"] = probability_functional("bg", 4, 4,
                                     {{1, 1, 1, 1}, {1, 1, 1, -1}, {1, 1, -2, 0}, {1, -1, 0, 0}},
                                     {-2, -1, 0, 0}, {-2, -1, 0, 0}, 0.0);
    m["aiig1"] = correlator_functional(
        "aiig1", 4, 4, {{2, 1, 1, 2}, {1, 1, 2, -2}, {1, 2, -2, -1}, {2, -2, -1, -1}}, 10.0);
    m["aiig2"] = correlator_functional(
        "aiig2", 4, 4, {{2, 1, 0, 1}, {1, -1, 1, -1}, {0, 1, 0, -1}, {1, -1, -1, -1}}, 6.0);

    // Certify every declared bound against the enumerated one; the
    // coefficients are dyadic rationals, so this comparison is exact.
    for (const auto& [name, f] : m) {
        const double enumerated = lhv_bound(f);
        if (enumerated != f.classical_bound)
            throw BoundMismatch("builtin '" + name + "': declared bound " +
                                std::to_string(f.classical_bound) + " but enumeration gives " +
                                std::to_string(enumerated));
    }
    return m;
}

} // namespace

const BellFunctional& builtin(const std::string& name) {
    static const std::map<std::string, BellFunctional> all = build_all();
    const auto it = all.find(name);
    if (it == all.end()) throw UnknownInequality("unknown inequality '" + name + "'");
    return it->second;
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {"chsh",  "chain3", "chain4", "gisin3", "gisin4",
                                                   "i3322", "dzc",    "bg",     "aiig1",  "aiig2"};
    return names;
}

} // namespace seqbell
