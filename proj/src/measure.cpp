#include "seqbell/measure.hpp"

#include <cmath>

namespace seqbell {

std::array<double, 3> Direction::unit_vector() const {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

double UnsharpMeasurement::F() const {
    return std::sqrt(std::max(1.0 - lambda * lambda, 0.0));
}

ComplexMat2 observable(const Direction& d) {
    const auto n = d.unit_vector();
    ComplexMat2 m;
    m(0, 0) = n[2];
    m(1, 1) = -n[2];
    m(0, 1) = cplx(n[0], -n[1]);
    m(1, 0) = cplx(n[0], n[1]);
    return m;
}

std::pair<ComplexMat2, ComplexMat2> effects(const UnsharpMeasurement& m) {
    if (!(m.lambda > 0.0 && m.lambda <= 1.0))
        throw InvalidParameter("effects: lambda must lie in (0, 1]");
    const ComplexMat2 half_obs = cplx(m.lambda / 2.0) * observable(m.direction);
    const ComplexMat2 half_id = cplx(0.5) * identity2();
    return {half_id + half_obs, half_id - half_obs};
}

namespace {

// sqrt(E_{+-}) has the closed form c I +- d n.sigma with
// c = (sqrt((1+lambda)/2) + sqrt((1-lambda)/2))/2 and d the half-difference;
// going through sqrt_psd keeps the single code path exercised instead.
ComplexMat2 effect_root(const UnsharpMeasurement& m, int sign) {
    auto [ep, em] = effects(m);
    return sqrt_psd(sign > 0 ? ep : em);
}

} // namespace

std::pair<double, ComplexMat4> luders_update_B(const ComplexMat4& rho, const UnsharpMeasurement& m,
                                               const Outcome& outcome) {
    if (outcome.value != 1 && outcome.value != -1)
        throw InvalidParameter("luders_update_B: outcome must be +1 or -1");

    auto [ep, em] = effects(m);
    const ComplexMat4 effect4 = tensor(identity2(), outcome.value > 0 ? ep : em);
    const double prob = expectation(rho, effect4);
    if (prob < 1e-14)
        throw ZeroProbability("luders_update_B: outcome probability below 1e-14");

    const ComplexMat4 kraus = tensor(identity2(), effect_root(m, outcome.value));
    ComplexMat4 post = kraus * rho * kraus;
    for (auto& v : post.e) v /= prob;
    return {prob, post};
}

ComplexMat4 decohere_channel(const ComplexMat4& rho, const std::vector<UnsharpMeasurement>& settings,
                             const std::vector<double>& probs) {
    if (settings.size() != probs.size())
        throw InvalidParameter("decohere_channel: settings/probs length mismatch");
    double total = 0.0;
    for (double p : probs) total += p;
    if (std::abs(total - 1.0) > 1e-12)
        throw InvalidParameter("decohere_channel: setting probabilities must sum to 1");

    ComplexMat4 out;
    for (std::size_t k = 0; k < settings.size(); ++k) {
        for (int sign : {+1, -1}) {
            const ComplexMat4 kraus = tensor(identity2(), effect_root(settings[k], sign));
            const ComplexMat4 branch = kraus * rho * kraus;
            for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] += probs[k] * branch.e[i];
        }
    }
    return out;
}

ComplexMat4 decohere_channel(const ComplexMat4& rho, const std::vector<UnsharpMeasurement>& settings) {
    if (settings.empty()) throw InvalidParameter("decohere_channel: no settings");
    return decohere_channel(rho, settings,
                            std::vector<double>(settings.size(), 1.0 / static_cast<double>(settings.size())));
}

} // namespace seqbell
