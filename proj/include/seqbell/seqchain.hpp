#pragma once

#include <string>
#include <vector>

#include "seqbell/bell.hpp"
#include "seqbell/measure.hpp"
#include "seqbell/states.hpp"

namespace seqbell {

// One sequential experiment: Alice with fixed projective settings, k Bobs
// measuring one after another with unsharp settings.  The last Bob is
// always sharp (lambda = 1).
struct Scenario {
    StateSpec state;
    BellFunctional functional;
    std::vector<Direction> alice_dirs;             // n_alice entries
    std::vector<std::vector<Direction>> bob_dirs;  // one list of n_bob entries per Bob
    std::vector<double> lambdas;                   // one per Bob, last == 1

    int bob_count() const { return static_cast<int>(bob_dirs.size()); }
};

// Throws InvalidParameter / DimensionMismatch when the scenario is malformed.
void validate(const Scenario& s);

// Functional value between Alice and each Bob, plus strict-violation flags.
struct ValueVector {
    std::vector<double> values;
    std::vector<bool> violations; // value > classical_bound (strictly)
};

// Correlation table seen by Bob i (1-based), with the state evolved through
// the non-selective averaged channels of Bobs 1..i-1.  Density-matrix path.
CorrelationTable bob_table(const Scenario& s, int i);

// Evaluates the functional on bob_table(i) for every Bob (incremental
// density-matrix evolution, one channel application per Bob).
ValueVector value_vector(const Scenario& s);

// Closed-form singlet correlator: Alice along `alice`, the current Bob
// along `bob` with sharpness lambdas.back(), after the averaged channels of
// the previous Bobs (prev_bobs[j] with sharpness lambdas[j]).
double analytic_singlet_corr(const Direction& alice, const std::vector<std::vector<Direction>>& prev_bobs,
                             const Direction& bob, const std::vector<double>& lambdas);

// value_vector computed entirely through analytic_singlet_corr.
// Throws UnsupportedState unless s.state is the singlet.
ValueVector analytic_value_vector(const Scenario& s);

// ---------------------------------------------------------------------------
// Bloch-picture fast path.  Any two-qubit state is fixed by
//   a_A[i] = tr(rho sigma_i (x) I), a_B[j] = tr(rho I (x) sigma_j),
//   T[i][j] = tr(rho sigma_i (x) sigma_j),
// and the non-selective averaged Bob channel acts linearly on the Bob side:
//   a_B -> M a_B, T -> T M with M = (1/n) sum_k [F I + (1-F) y_k y_k^T].
// Equality with the density-matrix path is a test, not an assumption.

struct BlochState {
    std::array<double, 3> a_A{};
    std::array<double, 3> a_B{};
    double T[3][3] = {};
};

BlochState bloch_state(const StateSpec& spec);

void bloch_advance(BlochState& st, const std::array<double, 3>* bob_units, int n_settings,
                   double lambda);

// Table for the current Bob from the Bloch representation (correlators and
// Bob marginals carry the lambda factor of the unsharp expectation).
CorrelationTable bloch_table(const BlochState& st, const std::vector<Direction>& alice_dirs,
                             const std::vector<Direction>& bob_dirs, double lambda);

// value_vector through the Bloch path (works for all three state families).
ValueVector bloch_value_vector(const Scenario& s);

// ---------------------------------------------------------------------------
// Replay presets: published angle vectors with their reported values.

struct ReplayPreset {
    std::string name;
    Scenario scenario;
    std::vector<double> targets; // reported per-Bob values
    double tolerance = 0.05;     // angles are quoted to 2 decimals
};

const ReplayPreset& replay_preset(const std::string& name);
const std::vector<std::string>& replay_preset_names();

} // namespace seqbell
