#include "seqbell/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace seqbell {

namespace {

ComplexMat4 pure_state(const std::array<cplx, 4>& psi) {
    ComplexMat4 rho;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) rho(r, c) = psi[r] * std::conj(psi[c]);
    return rho;
}

ComplexMat4 singlet_matrix() {
    const double inv = 1.0 / std::sqrt(2.0);
    return pure_state({0.0, inv, -inv, 0.0});
}

} // namespace

ComplexMat4 make_state(const StateSpec& spec) {
    switch (spec.kind) {
    case StateKind::Singlet:
        return singlet_matrix();
    case StateKind::Schmidt: {
        if (!(spec.alpha >= 0.0 && spec.alpha <= std::numbers::pi / 2.0))
            throw InvalidParameter("make_state: alpha must lie in [0, pi/2]");
        return pure_state({std::cos(spec.alpha), 0.0, 0.0, std::sin(spec.alpha)});
    }
    case StateKind::Werner: {
        if (!(spec.w >= 0.0 && spec.w <= 1.0))
            throw InvalidParameter("make_state: w must lie in [0, 1]");
        ComplexMat4 rho = singlet_matrix();
        for (auto& v : rho.e) v *= spec.w;
        const double noise = (1.0 - spec.w) / 4.0;
        for (int i = 0; i < 4; ++i) rho(i, i) += noise;
        return rho;
    }
    }
    throw InvalidParameter("make_state: unknown state kind");
}

double concurrence_schmidt(double alpha) {
    if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2.0))
        throw InvalidParameter("concurrence_schmidt: alpha must lie in [0, pi/2]");
    return std::sin(2.0 * alpha);
}

StateSpec parse_state_spec(const std::string& text) {
    if (text == "singlet") return StateSpec::singlet();

    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string head = text.substr(0, colon);
        const std::string tail = text.substr(colon + 1);
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(tail, &used);
            if (used != tail.size()) throw std::invalid_argument(tail);
        } catch (const std::exception&) {
            throw InvalidParameter("state spec: cannot parse number in '" + text + "'");
        }
        if (head == "schmidt") return StateSpec::schmidt(value);
        if (head == "werner") return StateSpec::werner(value);
    }
    throw InvalidParameter("state spec: expected 'singlet', 'schmidt:<alpha>' or 'werner:<w>', got '" +
                           text + "'");
}

std::string to_string(const StateSpec& spec) {
    std::ostringstream out;
    switch (spec.kind) {
    case StateKind::Singlet:
        out << "singlet";
        break;
    case StateKind::Schmidt:
        out << "schmidt:" << spec.alpha;
        break;
    case StateKind::Werner:
        out << "werner:" << spec.w;
        break;
    }
    return out.str();
}

} // namespace seqbell
