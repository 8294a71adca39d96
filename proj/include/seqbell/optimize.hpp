#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "seqbell/seqchain.hpp"

namespace seqbell {

struct OptimizerConfig {
    int restarts = 400;
    double simplex_tol = 1e-7; // stop when the simplex objective spread falls below this
    int max_iters = 5000;      // per restart
    std::uint64_t seed = 1;
    double lambda_lo = 0.02;
    double lambda_hi = 1.0;
    double feasibility_eps = 1e-4;
    int threads = 0;          // 0: SEQBELL_THREADS env var, then the OpenMP default
    bool force_serial = false; // run the serial reference loop instead of OpenMP
};

// Parameter kinds drive the box handling inside the simplex: polar angles
// clamp to [0, pi], azimuths wrap modulo 2*pi (with wrap-aware centroid and
// reflection), sharpness clamps to the lambda bounds.
enum class ParamKind { Polar, Azimuth, Sharpness };

struct NmResult {
    std::vector<double> x;
    double f = 0.0;
    bool converged = false; // false: max_iters exhausted, best-so-far returned
    int iters = 0;
};

// Derivative-free MAXIMIZATION of `objective` from the start point x0.
// Deterministic: no internal randomness beyond x0.
NmResult nelder_mead(const std::function<double(const double*)>& objective, std::vector<double> x0,
                     const std::vector<ParamKind>& kinds, const OptimizerConfig& cfg);

struct SharingResult {
    int k = 1;
    double margin = 0.0; // max over parameters of min_i (value_i - bound)
    Scenario best_scenario;
    bool feasible = false; // margin > feasibility_eps
    int restarts_used = 0;
    bool all_converged = true;
};

// Maximizes min_i(value_i - bound) over every direction and lambda_1..k-1
// (the final Bob is sharp).  Multistart Nelder-Mead; deterministic in seed.
SharingResult sharing_margin(const StateSpec& state, const BellFunctional& f, int k,
                             const OptimizerConfig& cfg);

// Same search with all sharpness values pinned (lambdas.size() == k,
// last entry 1): only the angles are optimized.
SharingResult sharing_margin_fixed_lambdas(const StateSpec& state, const BellFunctional& f,
                                           const std::vector<double>& lambdas,
                                           const OptimizerConfig& cfg);

struct ConstrainedResult {
    double value1 = 0.0;
    double value2 = 0.0;
    double residual = 0.0; // |value1 - target1| at the optimum
    Scenario best_scenario;
};

// Maximizes Bob 2's value subject to Bob 1's value == target1, via an
// exterior quadratic penalty with escalating weight.  Restarts whose final
// residual exceeds 1e-3 are discarded; throws Infeasible if none survive.
ConstrainedResult max_bob2_given_bob1(const StateSpec& state, const BellFunctional& f, double target1,
                                      const OptimizerConfig& cfg);

struct MaxBobsResult {
    int max_bobs = 0;
    std::vector<SharingResult> per_k; // results for k = 1, 2, ... up to the first infeasible
};

// Largest k <= k_max whose sharing margin is feasible; stops at the first
// infeasible k.
MaxBobsResult max_bobs_detailed(const StateSpec& state, const BellFunctional& f,
                                const OptimizerConfig& cfg, int k_max = 4);
int max_bobs(const StateSpec& state, const BellFunctional& f, const OptimizerConfig& cfg,
             int k_max = 4);

// Thread count the restart loop will actually use (cfg, then the
// SEQBELL_THREADS environment variable, then the OpenMP default).
int resolve_threads(const OptimizerConfig& cfg);

} // namespace seqbell
