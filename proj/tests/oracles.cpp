#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace seqbell::oracles {

namespace {

double phasor_value(const BellFunctional& f, const std::vector<double>& b) {
    double total = f.constant.to_double();
    for (int u = 0; u < f.n_alice; ++u) {
        std::complex<double> z = 0.0;
        for (int v = 0; v < f.n_bob; ++v)
            z += f.corr_coeffs[u][v].to_double() *
                 std::exp(std::complex<double>(0.0, b[static_cast<std::size_t>(v)]));
        total += std::abs(z);
    }
    return total;
}

} // namespace

double planar_singlet_max(const BellFunctional& f, int coarse, int refine_rounds) {
    const int free_dims = f.n_bob - 1; // a global angle shift drops out
    std::vector<double> b(static_cast<std::size_t>(f.n_bob), 0.0);
    std::vector<double> best_b = b;
    double best = phasor_value(f, b);

    // Coarse pass: full grid over the free angles.
    std::vector<int> idx(static_cast<std::size_t>(free_dims), 0);
    const double cell = 2.0 * std::numbers::pi / coarse;
    bool done = free_dims == 0;
    while (!done) {
        for (int d = 0; d < free_dims; ++d)
            b[static_cast<std::size_t>(d + 1)] = idx[static_cast<std::size_t>(d)] * cell;
        const double val = phasor_value(f, b);
        if (val > best) {
            best = val;
            best_b = b;
        }
        int d = 0;
        for (; d < free_dims; ++d) {
            if (++idx[static_cast<std::size_t>(d)] < coarse) break;
            idx[static_cast<std::size_t>(d)] = 0;
        }
        done = d == free_dims;
    }

    // Local refinement: shrink a bracket around the best point.
    double span = cell;
    const int points = 17;
    for (int round = 0; round < refine_rounds; ++round) {
        const std::vector<double> center = best_b;
        std::vector<int> ridx(static_cast<std::size_t>(free_dims), 0);
        bool rdone = free_dims == 0;
        while (!rdone) {
            for (int d = 0; d < free_dims; ++d)
                b[static_cast<std::size_t>(d + 1)] =
                    center[static_cast<std::size_t>(d + 1)] +
                    span * (2.0 * ridx[static_cast<std::size_t>(d)] / (points - 1) - 1.0);
            const double val = phasor_value(f, b);
            if (val > best) {
                best = val;
                best_b = b;
            }
            int d = 0;
            for (; d < free_dims; ++d) {
                if (++ridx[static_cast<std::size_t>(d)] < points) break;
                ridx[static_cast<std::size_t>(d)] = 0;
            }
            rdone = d == free_dims;
        }
        span *= 4.0 / (points - 1);
    }
    return best;
}

std::vector<double> chsh_chain_values(const std::vector<double>& lambdas) {
    std::vector<double> values;
    double shrink = 1.0;
    for (const double lam : lambdas) {
        values.push_back(2.0 * std::sqrt(2.0) * lam * shrink);
        shrink *= (1.0 + std::sqrt(1.0 - lam * lam)) / 2.0;
    }
    return values;
}

} // namespace seqbell::oracles
