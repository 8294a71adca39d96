#include "seqbell/seqchain.hpp"

#include <cmath>

namespace seqbell {

namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

std::vector<UnsharpMeasurement> bob_measurements(const Scenario& s, int j /*0-based*/) {
    std::vector<UnsharpMeasurement> ms;
    ms.reserve(s.bob_dirs[j].size());
    for (const auto& d : s.bob_dirs[j]) ms.push_back({d, s.lambdas[j]});
    return ms;
}

CorrelationTable table_from_rho(const ComplexMat4& rho, const Scenario& s, int i /*1-based*/) {
    const int na = s.functional.n_alice;
    const int nb = s.functional.n_bob;
    const double lam = s.lambdas[i - 1];

    CorrelationTable t;
    t.corr.assign(na, std::vector<double>(nb, 0.0));
    t.alice_marg.assign(na, 0.0);
    t.bob_marg.assign(nb, 0.0);

    std::vector<ComplexMat2> aobs, bobs;
    for (const auto& d : s.alice_dirs) aobs.push_back(observable(d));
    for (const auto& d : s.bob_dirs[i - 1]) bobs.push_back(observable(d));

    for (int u = 0; u < na; ++u) {
        t.alice_marg[u] = expectation(rho, tensor(aobs[u], identity2()));
        for (int v = 0; v < nb; ++v) t.corr[u][v] = lam * expectation(rho, tensor(aobs[u], bobs[v]));
    }
    // The unsharp dichotomic expectation carries the sharpness factor:
    // <B_v> = sum_b b Tr[(I (x) E_b) rho] = lambda Tr[rho_B n.sigma].
    for (int v = 0; v < nb; ++v) t.bob_marg[v] = lam * expectation(rho, tensor(identity2(), bobs[v]));
    return t;
}

} // namespace

void validate(const Scenario& s) {
    const int k = s.bob_count();
    if (k < 1) throw InvalidParameter("scenario: at least one Bob required");
    if (static_cast<int>(s.alice_dirs.size()) != s.functional.n_alice)
        throw DimensionMismatch("scenario: Alice needs exactly n_alice directions");
    for (const auto& dirs : s.bob_dirs)
        if (static_cast<int>(dirs.size()) != s.functional.n_bob)
            throw DimensionMismatch("scenario: every Bob needs exactly n_bob directions");
    if (static_cast<int>(s.lambdas.size()) != k)
        throw DimensionMismatch("scenario: one sharpness value per Bob required");
    for (double lam : s.lambdas)
        if (!(lam > 0.0 && lam <= 1.0))
            throw InvalidParameter("scenario: every lambda must lie in (0, 1]");
    if (s.lambdas.back() != 1.0)
        throw InvalidParameter("scenario: the final Bob measures sharp (lambda = 1)");
}

CorrelationTable bob_table(const Scenario& s, int i) {
    validate(s);
    if (i < 1 || i > s.bob_count()) throw IndexOutOfRange("bob_table: Bob index out of range");

    ComplexMat4 rho = make_state(s.state);
    for (int j = 0; j < i - 1; ++j) rho = decohere_channel(rho, bob_measurements(s, j));
    return table_from_rho(rho, s, i);
}

ValueVector value_vector(const Scenario& s) {
    validate(s);
    const FlatFunctional flat = flatten(s.functional);

    ValueVector out;
    ComplexMat4 rho = make_state(s.state);
    for (int i = 1; i <= s.bob_count(); ++i) {
        if (i > 1) rho = decohere_channel(rho, bob_measurements(s, i - 2));
        const double value = evaluate(flat, table_from_rho(rho, s, i));
        out.values.push_back(value);
        out.violations.push_back(value > s.functional.classical_bound);
    }
    return out;
}

double analytic_singlet_corr(const Direction& alice, const std::vector<std::vector<Direction>>& prev_bobs,
                             const Direction& bob, const std::vector<double>& lambdas) {
    if (lambdas.size() != prev_bobs.size() + 1)
        throw DimensionMismatch("analytic_singlet_corr: need one lambda per previous Bob plus one");

    // Averaging the nested dot-product formulas collapses to one running
    // vector: each previous Bob j replaces a by
    //   F_j a + (1 - F_j) (1/n) sum_k (a . y_k) y_k,
    // after which the correlator is -lambda_i (a . y).
    Vec3 a = alice.unit_vector();
    for (std::size_t j = 0; j < prev_bobs.size(); ++j) {
        const double lam = lambdas[j];
        const double F = std::sqrt(std::max(1.0 - lam * lam, 0.0));
        const double n = static_cast<double>(prev_bobs[j].size());
        Vec3 next{F * a[0], F * a[1], F * a[2]};
        for (const auto& d : prev_bobs[j]) {
            const Vec3 y = d.unit_vector();
            const double c = (1.0 - F) / n * dot(a, y);
            next[0] += c * y[0];
            next[1] += c * y[1];
            next[2] += c * y[2];
        }
        a = next;
    }
    return -lambdas.back() * dot(a, bob.unit_vector());
}

ValueVector analytic_value_vector(const Scenario& s) {
    validate(s);
    if (s.state.kind != StateKind::Singlet)
        throw UnsupportedState("analytic_value_vector: closed form is singlet-only");
    const FlatFunctional flat = flatten(s.functional);

    ValueVector out;
    std::vector<std::vector<Direction>> prev;
    std::vector<double> lams;
    for (int i = 0; i < s.bob_count(); ++i) {
        lams.push_back(s.lambdas[i]);
        CorrelationTable t;
        t.corr.assign(flat.n_alice, std::vector<double>(flat.n_bob, 0.0));
        t.alice_marg.assign(flat.n_alice, 0.0); // singlet marginals vanish exactly
        t.bob_marg.assign(flat.n_bob, 0.0);
        for (int u = 0; u < flat.n_alice; ++u)
            for (int v = 0; v < flat.n_bob; ++v)
                t.corr[u][v] = analytic_singlet_corr(s.alice_dirs[u], prev, s.bob_dirs[i][v], lams);
        const double value = evaluate(flat, t);
        out.values.push_back(value);
        out.violations.push_back(value > s.functional.classical_bound);
        prev.push_back(s.bob_dirs[i]);
    }
    return out;
}

BlochState bloch_state(const StateSpec& spec) {
    BlochState st;
    switch (spec.kind) {
    case StateKind::Singlet:
        st.T[0][0] = st.T[1][1] = st.T[2][2] = -1.0;
        break;
    case StateKind::Werner:
        if (!(spec.w >= 0.0 && spec.w <= 1.0))
            throw InvalidParameter("bloch_state: w must lie in [0, 1]");
        st.T[0][0] = st.T[1][1] = st.T[2][2] = -spec.w;
        break;
    case StateKind::Schmidt: {
        if (!(spec.alpha >= 0.0 && spec.alpha <= 1.5707963267948966 + 1e-12))
            throw InvalidParameter("bloch_state: alpha must lie in [0, pi/2]");
        const double s2 = std::sin(2.0 * spec.alpha);
        const double c2 = std::cos(2.0 * spec.alpha);
        st.T[0][0] = s2;
        st.T[1][1] = -s2;
        st.T[2][2] = 1.0;
        st.a_A = {0.0, 0.0, c2};
        st.a_B = {0.0, 0.0, c2};
        break;
    }
    }
    return st;
}

void bloch_advance(BlochState& st, const std::array<double, 3>* bob_units, int n_settings,
                   double lambda) {
    const double F = std::sqrt(std::max(1.0 - lambda * lambda, 0.0));
    const double wgt = (1.0 - F) / static_cast<double>(n_settings);

    double M[3][3] = {{F, 0.0, 0.0}, {0.0, F, 0.0}, {0.0, 0.0, F}};
    for (int k = 0; k < n_settings; ++k)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) M[r][c] += wgt * bob_units[k][r] * bob_units[k][c];

    double newT[3][3];
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            newT[r][c] = st.T[r][0] * M[0][c] + st.T[r][1] * M[1][c] + st.T[r][2] * M[2][c];
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) st.T[r][c] = newT[r][c];

    const Vec3 b = st.a_B;
    for (int r = 0; r < 3; ++r) st.a_B[r] = M[r][0] * b[0] + M[r][1] * b[1] + M[r][2] * b[2];
}

CorrelationTable bloch_table(const BlochState& st, const std::vector<Direction>& alice_dirs,
                             const std::vector<Direction>& bob_dirs, double lambda) {
    const int na = static_cast<int>(alice_dirs.size());
    const int nb = static_cast<int>(bob_dirs.size());
    CorrelationTable t;
    t.corr.assign(na, std::vector<double>(nb, 0.0));
    t.alice_marg.assign(na, 0.0);
    t.bob_marg.assign(nb, 0.0);

    std::vector<Vec3> au(na), bu(nb), Tb(nb);
    for (int u = 0; u < na; ++u) au[u] = alice_dirs[u].unit_vector();
    for (int v = 0; v < nb; ++v) {
        bu[v] = bob_dirs[v].unit_vector();
        for (int r = 0; r < 3; ++r)
            Tb[v][r] = st.T[r][0] * bu[v][0] + st.T[r][1] * bu[v][1] + st.T[r][2] * bu[v][2];
        t.bob_marg[v] = lambda * dot(st.a_B, bu[v]);
    }
    for (int u = 0; u < na; ++u) {
        t.alice_marg[u] = dot(st.a_A, au[u]);
        for (int v = 0; v < nb; ++v) t.corr[u][v] = lambda * dot(au[u], Tb[v]);
    }
    return t;
}

ValueVector bloch_value_vector(const Scenario& s) {
    validate(s);
    const FlatFunctional flat = flatten(s.functional);

    ValueVector out;
    BlochState st = bloch_state(s.state);
    for (int i = 0; i < s.bob_count(); ++i) {
        if (i > 0) {
            std::vector<Vec3> units;
            for (const auto& d : s.bob_dirs[i - 1]) units.push_back(d.unit_vector());
            bloch_advance(st, units.data(), static_cast<int>(units.size()), s.lambdas[i - 1]);
        }
        const double value = evaluate(flat, bloch_table(st, s.alice_dirs, s.bob_dirs[i], s.lambdas[i]));
        out.values.push_back(value);
        out.violations.push_back(value > s.functional.classical_bound);
    }
    return out;
}

namespace {

std::vector<Direction> dirs_from_flat(std::initializer_list<double> flat) {
    std::vector<Direction> out;
    auto it = flat.begin();
    while (it != flat.end()) {
        const double theta = *it++;
        const double phi = *it++;
        out.push_back({theta, phi});
    }
    return out;
}

std::vector<ReplayPreset> build_presets() {
    std::vector<ReplayPreset> presets;

    const auto chain3_alice = dirs_from_flat({1.19, 1.13, 1.21, 6.28, 1.59, 5.28});
    const auto chain3_bob = dirs_from_flat({2.00, 3.70, 1.76, 2.62, 1.34, 1.66});

    {
        ReplayPreset p;
        p.name = "chain3-2bob";
        p.scenario.state = StateSpec::singlet();
        p.scenario.functional = builtin("chain3");
        p.scenario.alice_dirs = chain3_alice;
        p.scenario.bob_dirs = {chain3_bob, chain3_bob};
        p.scenario.lambdas = {0.81, 1.0};
        p.targets = {4.20, 4.13};
        presets.push_back(p);
    }
    {
        ReplayPreset p;
        p.name = "chain3-3bob";
        p.scenario.state = StateSpec::singlet();
        p.scenario.functional = builtin("chain3");
        p.scenario.alice_dirs = chain3_alice;
        p.scenario.bob_dirs = {chain3_bob, chain3_bob, chain3_bob};
        p.scenario.lambdas = {0.77, 0.94, 1.0};
        p.targets = {4.00, 4.00, 2.86};
        presets.push_back(p);
    }
    {
        ReplayPreset p;
        p.name = "chain4-2bob";
        p.scenario.state = StateSpec::singlet();
        p.scenario.functional = builtin("chain4");
        p.scenario.alice_dirs = dirs_from_flat({0.39, 0.0, 1.18, 0.0, 1.96, 6.28, 2.75, 0.0});
        p.scenario.bob_dirs = {
            dirs_from_flat({2.36, 3.14, 1.57, 3.14, 0.78, 3.14, 0.0, 5.77}),
            dirs_from_flat({2.36, 3.14, 1.57, 3.14, 0.78, 3.14, 0.0, 6.09}),
        };
        p.scenario.lambdas = {0.81, 1.0};
        p.targets = {6.00, 5.85};
        presets.push_back(p);
    }
    return presets;
}

} // namespace

const ReplayPreset& replay_preset(const std::string& name) {
    static const std::vector<ReplayPreset> presets = build_presets();
    for (const auto& p : presets)
        if (p.name == name) return p;
    throw UnknownPreset("unknown replay preset '" + name + "'");
}

const std::vector<std::string>& replay_preset_names() {
    static const std::vector<std::string> names = {"chain3-2bob", "chain3-3bob",
                                                   "chain4-2bob"};
    return names;
}

} // namespace seqbell
