// Times the multistart sharing-margin search with the serial restart loop
// and with the OpenMP one, and checks that both produce identical results
// (the parallel loop must be a pure reordering of independent restarts).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "seqbell/bell.hpp"
#include "seqbell/optimize.hpp"
#include "seqbell/states.hpp"

using namespace seqbell;

namespace {

double run_case(const char* label, const BellFunctional& f, int k, OptimizerConfig cfg,
                bool serial, SharingResult& out) {
    cfg.force_serial = serial;
    const auto t0 = std::chrono::steady_clock::now();
    out = sharing_margin(StateSpec::singlet(), f, k, cfg);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("  %-8s %8.3f s   margin % .12f\n", label, dt, out.margin);
    return dt;
}

bool same_scenario(const Scenario& a, const Scenario& b) {
    if (a.lambdas != b.lambdas) return false;
    for (std::size_t u = 0; u < a.alice_dirs.size(); ++u)
        if (a.alice_dirs[u].theta != b.alice_dirs[u].theta ||
            a.alice_dirs[u].phi != b.alice_dirs[u].phi)
            return false;
    for (std::size_t i = 0; i < a.bob_dirs.size(); ++i)
        for (std::size_t v = 0; v < a.bob_dirs[i].size(); ++v)
            if (a.bob_dirs[i][v].theta != b.bob_dirs[i][v].theta ||
                a.bob_dirs[i][v].phi != b.bob_dirs[i][v].phi)
                return false;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    OptimizerConfig cfg;
    cfg.restarts = argc > 1 ? std::atoi(argv[1]) : 200;
    cfg.seed = 42;

    bool all_identical = true;
    for (const char* name : {"chsh", "chain3", "gisin4"}) {
        const BellFunctional& f = builtin(name);
        std::printf("%s, 2 bobs, %d restarts:\n", name, cfg.restarts);
        SharingResult serial, parallel;
        const double ts = run_case("serial", f, 2, cfg, true, serial);
        const double tp = run_case("openmp", f, 2, cfg, false, parallel);
        const bool identical =
            serial.margin == parallel.margin && same_scenario(serial.best_scenario, parallel.best_scenario);
        all_identical = all_identical && identical;
        std::printf("  speedup %.2fx, results %s\n\n", ts / tp,
                    identical ? "bit-identical" : "DIFFER");
    }
    if (!all_identical) {
        std::printf("FAIL: serial and parallel restart loops disagree\n");
        return 1;
    }
    std::printf("serial and parallel restart loops agree on every case\n");
    return 0;
}
