#pragma once

#include <string>
#include <vector>

#include "seqbell/errors.hpp"

namespace seqbell {

// Exact small rational, kept normalized with positive denominator.  The
// probability->correlator rewrite of I3322/BG is done in this type so the
// stored coefficients are exact; they become floating point only when a
// functional is evaluated.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {} // NOLINT(google-explicit-constructor)
    Rational(long long n, long long d);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a) { return {-a.num, a.den}; }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
};

// Exact rational from the binary representation of a double (every finite
// double is a dyadic rational).  Throws InvalidParameter when the exact
// form does not fit in 64-bit integers.
Rational rational_from_double(double x);

// One local-realist functional:
//   value = sum_uv corr_coeffs[u][v] <A_u B_v>
//         + sum_u alice_marg[u] <A_u> + sum_v bob_marg[v] <B_v> + constant,
// bounded by classical_bound (on |value| when use_abs is set).
struct BellFunctional {
    std::string name;
    int n_alice = 2;
    int n_bob = 2;
    std::vector<std::vector<Rational>> corr_coeffs;
    std::vector<Rational> alice_marg;
    std::vector<Rational> bob_marg;
    Rational constant;
    double classical_bound = 0.0;
    bool use_abs = true;
};

// Measured expectation values the functional is applied to.
struct CorrelationTable {
    std::vector<std::vector<double>> corr;
    std::vector<double> alice_marg;
    std::vector<double> bob_marg;
};

// Coefficients mirrored into plain doubles, for the evaluation hot path.
struct FlatFunctional {
    int n_alice = 2;
    int n_bob = 2;
    double corr[4][4] = {};
    double alice_marg[4] = {};
    double bob_marg[4] = {};
    double constant = 0.0;
    double classical_bound = 0.0;
    bool use_abs = true;
};

FlatFunctional flatten(const BellFunctional& f);

// The ten built-ins: chsh, chain3, chain4, gisin3, gisin4, i3322, dzc, bg,
// aiig1, aiig2.  Each one's declared bound is certified against lhv_bound
// the first time it is built; a mismatch throws BoundMismatch.
const BellFunctional& builtin(const std::string& name);
const std::vector<std::string>& builtin_names();

// value of f on t (absolute value when use_abs).  Throws DimensionMismatch.
double evaluate(const BellFunctional& f, const CorrelationTable& t);
double evaluate(const FlatFunctional& f, const CorrelationTable& t);

// Exact classical bound: maximum of the functional over all
// 2^(n_alice+n_bob) deterministic outcome assignments.
double lhv_bound(const BellFunctional& f);

// Custom functional from a JSON file: fields name, corr, alice_marg,
// bob_marg, constant, bound, use_abs.
BellFunctional load_functional_file(const std::string& path);

} // namespace seqbell
