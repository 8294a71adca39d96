#include "seqbell/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "seqbell/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace seqbell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_azimuth(double v) {
    v = std::fmod(v, kTwoPi);
    return v < 0.0 ? v + kTwoPi : v;
}

// Shortest signed angular difference, in (-pi, pi].
double wrap_pm_pi(double d) {
    d = std::fmod(d + kPi, kTwoPi);
    if (d <= 0.0) d += kTwoPi;
    return d - kPi;
}

double apply_bounds(double v, ParamKind kind, const OptimizerConfig& cfg) {
    switch (kind) {
    case ParamKind::Polar:
        return std::clamp(v, 0.0, kPi);
    case ParamKind::Azimuth:
        return wrap_azimuth(v);
    case ParamKind::Sharpness:
        return std::clamp(v, cfg.lambda_lo, cfg.lambda_hi);
    }
    return v;
}

// Difference respecting the azimuth topology: moving "from b towards a".
double coord_diff(double a, double b, ParamKind kind) {
    return kind == ParamKind::Azimuth ? wrap_pm_pi(a - b) : a - b;
}

} // namespace

int resolve_threads(const OptimizerConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("SEQBELL_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

NmResult nelder_mead(const std::function<double(const double*)>& objective, std::vector<double> x0,
                     const std::vector<ParamKind>& kinds, const OptimizerConfig& cfg) {
    const int n = static_cast<int>(x0.size());
    if (n == 0 || kinds.size() != x0.size())
        throw InvalidParameter("nelder_mead: empty start point or kind/coordinate mismatch");

    // Adaptive simplex coefficients (reflection, expansion, contraction,
    // shrink); the contraction/shrink scaling matters in dimension ~25.
    const double alpha = 1.0;
    const double gamma = 1.0 + 2.0 / n;
    const double beta = 0.75 - 1.0 / (2.0 * n);
    const double sigma = 1.0 - 1.0 / n;

    for (int i = 0; i < n; ++i) x0[i] = apply_bounds(x0[i], kinds[i], cfg);

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (int i = 0; i < n; ++i) {
        double step = 0.25;
        if (kinds[i] == ParamKind::Azimuth) step = 0.35;
        if (kinds[i] == ParamKind::Sharpness) step = 0.08;
        double& coord = simplex[i + 1][i];
        // Step away from the nearer box edge so the vertex stays distinct.
        if (kinds[i] != ParamKind::Azimuth && coord + step > (kinds[i] == ParamKind::Polar ? kPi : cfg.lambda_hi))
            coord -= step;
        else
            coord += step;
        coord = apply_bounds(coord, kinds[i], cfg);
    }

    std::vector<double> fvals(n + 1);
    for (int i = 0; i <= n; ++i) fvals[i] = objective(simplex[i].data());

    std::vector<double> centroid(n), candidate(n), candidate2(n);
    NmResult result;
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        int best = 0, worst = 0;
        for (int i = 1; i <= n; ++i) {
            if (fvals[i] > fvals[best]) best = i;
            if (fvals[i] < fvals[worst]) worst = i;
        }
        double second_worst_f = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= n; ++i)
            if (i != worst) second_worst_f = std::min(second_worst_f, fvals[i]);

        if (fvals[best] - fvals[worst] < cfg.simplex_tol) {
            result.converged = true;
            break;
        }

        // Centroid of all vertices but the worst; azimuths use the circular
        // mean so a simplex straddling the 0/2*pi seam is not torn apart.
        for (int c = 0; c < n; ++c) {
            if (kinds[c] == ParamKind::Azimuth) {
                double sx = 0.0, sy = 0.0;
                for (int i = 0; i <= n; ++i) {
                    if (i == worst) continue;
                    sx += std::cos(simplex[i][c]);
                    sy += std::sin(simplex[i][c]);
                }
                if (sx * sx + sy * sy < 1e-24) {
                    double acc = 0.0;
                    for (int i = 0; i <= n; ++i)
                        if (i != worst) acc += simplex[i][c];
                    centroid[c] = wrap_azimuth(acc / n);
                } else {
                    centroid[c] = wrap_azimuth(std::atan2(sy, sx));
                }
            } else {
                double acc = 0.0;
                for (int i = 0; i <= n; ++i)
                    if (i != worst) acc += simplex[i][c];
                centroid[c] = acc / n;
            }
        }

        auto move_from_worst = [&](std::vector<double>& dst, double coef) {
            for (int c = 0; c < n; ++c) {
                const double d = coord_diff(centroid[c], simplex[worst][c], kinds[c]);
                dst[c] = apply_bounds(centroid[c] + coef * d, kinds[c], cfg);
            }
        };

        move_from_worst(candidate, alpha); // reflection
        const double fr = objective(candidate.data());

        if (fr > fvals[best]) {
            move_from_worst(candidate2, gamma); // expansion
            const double fe = objective(candidate2.data());
            if (fe > fr) {
                simplex[worst] = candidate2;
                fvals[worst] = fe;
            } else {
                simplex[worst] = candidate;
                fvals[worst] = fr;
            }
            continue;
        }
        if (fr > second_worst_f) {
            simplex[worst] = candidate;
            fvals[worst] = fr;
            continue;
        }

        bool shrink = false;
        if (fr > fvals[worst]) {
            move_from_worst(candidate2, beta); // outside contraction
            const double fc = objective(candidate2.data());
            if (fc >= fr) {
                simplex[worst] = candidate2;
                fvals[worst] = fc;
            } else {
                shrink = true;
            }
        } else {
            move_from_worst(candidate2, -beta); // inside contraction
            const double fc = objective(candidate2.data());
            if (fc > fvals[worst]) {
                simplex[worst] = candidate2;
                fvals[worst] = fc;
            } else {
                shrink = true;
            }
        }

        if (shrink) {
            for (int i = 0; i <= n; ++i) {
                if (i == best) continue;
                for (int c = 0; c < n; ++c) {
                    const double d = coord_diff(simplex[i][c], simplex[best][c], kinds[c]);
                    simplex[i][c] = apply_bounds(simplex[best][c] + sigma * d, kinds[c], cfg);
                }
                fvals[i] = objective(simplex[i].data());
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (fvals[i] > fvals[best]) best = i;
    result.x = simplex[best];
    result.f = fvals[best];
    result.iters = iter;
    return result;
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 unit_from(double theta, double phi) {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Flat parameter vector layout: Alice (theta, phi) pairs, then each Bob's
// (theta, phi) pairs, then lambda_1..lambda_{k-1} unless they are pinned.
struct ParamLayout {
    int n_alice = 2;
    int n_bob = 2;
    int k = 1;
    std::vector<double> fixed_lambdas; // empty: lambdas are free parameters

    int lambda_params() const { return fixed_lambdas.empty() ? k - 1 : 0; }
    int dim() const { return 2 * (n_alice + k * n_bob) + lambda_params(); }

    std::vector<ParamKind> kinds() const {
        std::vector<ParamKind> out;
        out.reserve(dim());
        for (int u = 0; u < n_alice + k * n_bob; ++u) {
            out.push_back(ParamKind::Polar);
            out.push_back(ParamKind::Azimuth);
        }
        for (int j = 0; j < lambda_params(); ++j) out.push_back(ParamKind::Sharpness);
        return out;
    }

    std::vector<double> sample(SplitMix64& rng) const {
        std::vector<double> x;
        x.reserve(dim());
        for (int u = 0; u < n_alice + k * n_bob; ++u) {
            x.push_back(rng.uniform(0.0, kPi));
            x.push_back(rng.uniform(0.0, kTwoPi));
        }
        // The two-Bob trade-off lives around lambda ~ 0.6..0.95.
        for (int j = 0; j < lambda_params(); ++j) x.push_back(rng.uniform(0.6, 0.95));
        return x;
    }

    void lambdas_from(const double* x, double* lams) const {
        if (!fixed_lambdas.empty()) {
            for (int i = 0; i < k; ++i) lams[i] = fixed_lambdas[static_cast<std::size_t>(i)];
            return;
        }
        const double* lx = x + 2 * (n_alice + k * n_bob);
        for (int i = 0; i + 1 < k; ++i) lams[i] = lx[i];
        lams[k - 1] = 1.0;
    }

    Scenario to_scenario(const double* x, const StateSpec& state, const BellFunctional& f) const {
        Scenario s;
        s.state = state;
        s.functional = f;
        const double* p = x;
        for (int u = 0; u < n_alice; ++u, p += 2) s.alice_dirs.push_back({p[0], p[1]});
        for (int i = 0; i < k; ++i) {
            std::vector<Direction> dirs;
            for (int v = 0; v < n_bob; ++v, p += 2) dirs.push_back({p[0], p[1]});
            s.bob_dirs.push_back(std::move(dirs));
        }
        double lams[4];
        lambdas_from(x, lams);
        s.lambdas.assign(lams, lams + k);
        return s;
    }
};

// Per-Bob functional values along the chain, evaluated in the Bloch picture
// with no allocations.  `values` must have room for layout.k doubles.
struct ChainObjective {
    FlatFunctional flat;
    BlochState init;
    ParamLayout lay;

    void values_at(const double* x, double* values) const {
        Vec3 au[4];
        double a_marg[4];
        for (int u = 0; u < lay.n_alice; ++u) {
            au[u] = unit_from(x[2 * u], x[2 * u + 1]);
            a_marg[u] = dot(init.a_A, au[u]);
        }
        double lams[4];
        lay.lambdas_from(x, lams);

        BlochState st = init;
        const double* bx = x + 2 * lay.n_alice;
        for (int i = 0; i < lay.k; ++i, bx += 2 * lay.n_bob) {
            Vec3 bu[4], Tb[4];
            for (int v = 0; v < lay.n_bob; ++v) {
                bu[v] = unit_from(bx[2 * v], bx[2 * v + 1]);
                for (int r = 0; r < 3; ++r)
                    Tb[v][r] = st.T[r][0] * bu[v][0] + st.T[r][1] * bu[v][1] + st.T[r][2] * bu[v][2];
            }
            double s = flat.constant;
            for (int u = 0; u < lay.n_alice; ++u) {
                double row = 0.0;
                for (int v = 0; v < lay.n_bob; ++v) row += flat.corr[u][v] * dot(au[u], Tb[v]);
                s += lams[i] * row + flat.alice_marg[u] * a_marg[u];
            }
            for (int v = 0; v < lay.n_bob; ++v)
                s += flat.bob_marg[v] * lams[i] * dot(st.a_B, bu[v]);
            values[i] = flat.use_abs ? std::abs(s) : s;

            if (i + 1 < lay.k) bloch_advance(st, bu, lay.n_bob, lams[i]);
        }
    }

    double margin(const double* x) const {
        double values[4];
        values_at(x, values);
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i < lay.k; ++i) worst = std::min(worst, values[i] - flat.classical_bound);
        return worst;
    }
};

struct RestartOutcome {
    double f = -std::numeric_limits<double>::infinity();
    std::vector<double> x;
    bool converged = false;
};

// One Nelder-Mead run per restart with its own derived RNG stream, so the
// serial loop and the OpenMP loop produce bit-identical outcome vectors.
template <typename RunOne>
std::vector<RestartOutcome> run_restarts(int restarts, const OptimizerConfig& cfg, RunOne&& run_one) {
    std::vector<RestartOutcome> out(restarts);
    if (cfg.force_serial) {
        for (int r = 0; r < restarts; ++r) out[r] = run_one(r);
        return out;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(cfg))
#endif
    for (int r = 0; r < restarts; ++r) out[r] = run_one(r);
    return out;
}

int best_index(const std::vector<RestartOutcome>& outcomes) {
    int best = 0;
    for (int r = 1; r < static_cast<int>(outcomes.size()); ++r)
        if (outcomes[r].f > outcomes[best].f) best = r; // ties: lowest index
    return best;
}

SharingResult margin_search(const StateSpec& state, const BellFunctional& f, const ParamLayout& lay,
                            const OptimizerConfig& cfg) {
    if (cfg.restarts < 1) throw InvalidParameter("optimizer: restarts must be >= 1");
    const ChainObjective obj{flatten(f), bloch_state(state), lay};
    const auto kinds = lay.kinds();

    const auto outcomes = run_restarts(cfg.restarts, cfg, [&](int r) {
        SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        const NmResult res =
            nelder_mead([&obj](const double* x) { return obj.margin(x); }, lay.sample(rng), kinds, cfg);
        return RestartOutcome{res.f, res.x, res.converged};
    });

    const int best = best_index(outcomes);
    SharingResult result;
    result.k = lay.k;
    result.margin = outcomes[best].f;
    result.best_scenario = lay.to_scenario(outcomes[best].x.data(), state, f);
    result.feasible = result.margin > cfg.feasibility_eps;
    result.restarts_used = cfg.restarts;
    result.all_converged = true;
    for (const auto& o : outcomes) result.all_converged = result.all_converged && o.converged;
    return result;
}

} // namespace

SharingResult sharing_margin(const StateSpec& state, const BellFunctional& f, int k,
                             const OptimizerConfig& cfg) {
    if (k < 1) throw InvalidParameter("sharing_margin: k must be >= 1");
    ParamLayout lay;
    lay.n_alice = f.n_alice;
    lay.n_bob = f.n_bob;
    lay.k = k;
    if (k == 1) lay.fixed_lambdas = {1.0}; // a lone Bob measures sharp
    return margin_search(state, f, lay, cfg);
}

SharingResult sharing_margin_fixed_lambdas(const StateSpec& state, const BellFunctional& f,
                                           const std::vector<double>& lambdas,
                                           const OptimizerConfig& cfg) {
    if (lambdas.empty() || lambdas.size() > 4)
        throw InvalidParameter("sharing_margin_fixed_lambdas: need 1..4 sharpness values");
    for (double lam : lambdas)
        if (!(lam > 0.0 && lam <= 1.0))
            throw InvalidParameter("sharing_margin_fixed_lambdas: lambdas must lie in (0, 1]");
    if (lambdas.back() != 1.0)
        throw InvalidParameter("sharing_margin_fixed_lambdas: the final Bob measures sharp");
    ParamLayout lay;
    lay.n_alice = f.n_alice;
    lay.n_bob = f.n_bob;
    lay.k = static_cast<int>(lambdas.size());
    lay.fixed_lambdas = lambdas;
    return margin_search(state, f, lay, cfg);
}

ConstrainedResult max_bob2_given_bob1(const StateSpec& state, const BellFunctional& f, double target1,
                                      const OptimizerConfig& cfg) {
    if (cfg.restarts < 1) throw InvalidParameter("optimizer: restarts must be >= 1");
    ParamLayout lay;
    lay.n_alice = f.n_alice;
    lay.n_bob = f.n_bob;
    lay.k = 2;
    const ChainObjective obj{flatten(f), bloch_state(state), lay};
    const auto kinds = lay.kinds();
    constexpr double kResidualTol = 1e-3;

    const auto raw = run_restarts(cfg.restarts, cfg, [&](int r) {
        SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        std::vector<double> x = lay.sample(rng);
        // Exterior penalty with escalating weight; each stage warm-starts
        // from the previous one so the equality v1 = target tightens while
        // v2 stays near its constrained optimum.
        for (const double weight : {1e2, 1e4, 1e6}) {
            const auto penalized = [&obj, weight, target1](const double* p) {
                double values[4];
                obj.values_at(p, values);
                const double gap = values[0] - target1;
                return values[1] - weight * gap * gap;
            };
            x = nelder_mead(penalized, std::move(x), kinds, cfg).x;
        }
        double values[4];
        obj.values_at(x.data(), values);
        RestartOutcome out;
        out.x = std::move(x);
        // Rank valid restarts by v2; invalid ones sink below every valid one.
        out.f = std::abs(values[0] - target1) < kResidualTol
                    ? values[1]
                    : -std::numeric_limits<double>::infinity();
        out.converged = true;
        return out;
    });

    const int best = best_index(raw);
    if (raw[best].f == -std::numeric_limits<double>::infinity())
        throw Infeasible("max_bob2_given_bob1: no restart reached the Bob-1 target within 1e-3");

    double values[4];
    obj.values_at(raw[best].x.data(), values);
    ConstrainedResult result;
    result.value1 = values[0];
    result.value2 = values[1];
    result.residual = std::abs(values[0] - target1);
    result.best_scenario = lay.to_scenario(raw[best].x.data(), state, f);
    return result;
}

MaxBobsResult max_bobs_detailed(const StateSpec& state, const BellFunctional& f,
                                const OptimizerConfig& cfg, int k_max) {
    if (k_max < 1) throw InvalidParameter("max_bobs: k_max must be >= 1");
    MaxBobsResult out;
    for (int k = 1; k <= k_max; ++k) {
        out.per_k.push_back(sharing_margin(state, f, k, cfg));
        if (!out.per_k.back().feasible) break;
        out.max_bobs = k;
    }
    return out;
}

int max_bobs(const StateSpec& state, const BellFunctional& f, const OptimizerConfig& cfg, int k_max) {
    return max_bobs_detailed(state, f, cfg, k_max).max_bobs;
}

} // namespace seqbell
