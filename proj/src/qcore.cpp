#include "seqbell/qcore.hpp"

#include <cmath>

namespace seqbell {

const ComplexMat2& pauli_x() {
    static const ComplexMat2 m = [] {
        ComplexMat2 p;
        p(0, 1) = 1.0;
        p(1, 0) = 1.0;
        return p;
    }();
    return m;
}

const ComplexMat2& pauli_y() {
    static const ComplexMat2 m = [] {
        ComplexMat2 p;
        p(0, 1) = cplx(0.0, -1.0);
        p(1, 0) = cplx(0.0, 1.0);
        return p;
    }();
    return m;
}

const ComplexMat2& pauli_z() {
    static const ComplexMat2 m = [] {
        ComplexMat2 p;
        p(0, 0) = 1.0;
        p(1, 1) = -1.0;
        return p;
    }();
    return m;
}

const ComplexMat2& identity2() {
    static const ComplexMat2 m = ComplexMat2::identity();
    return m;
}

const ComplexMat4& identity4() {
    static const ComplexMat4 m = ComplexMat4::identity();
    return m;
}

ComplexMat4 tensor(const ComplexMat2& a, const ComplexMat2& b) {
    ComplexMat4 m;
    for (int ra = 0; ra < 2; ++ra)
        for (int ca = 0; ca < 2; ++ca) {
            const cplx w = a(ra, ca);
            if (w == cplx{}) continue;
            for (int rb = 0; rb < 2; ++rb)
                for (int cb = 0; cb < 2; ++cb)
                    m(2 * ra + rb, 2 * ca + cb) = w * b(rb, cb);
        }
    return m;
}

ComplexMat2 partial_trace_B(const ComplexMat4& m) {
    ComplexMat2 out;
    for (int ra = 0; ra < 2; ++ra)
        for (int ca = 0; ca < 2; ++ca)
            out(ra, ca) = m(2 * ra + 0, 2 * ca + 0) + m(2 * ra + 1, 2 * ca + 1);
    return out;
}

std::array<double, 2> eigvals_hermitian2(const ComplexMat2& m) {
    const double tr = std::real(m.trace());
    const double det = std::real(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    // Eigenvalues of a 2x2 matrix are (tr +/- sqrt(tr^2 - 4 det)) / 2;
    // Hermiticity guarantees a non-negative discriminant up to rounding.
    const double disc = std::max(tr * tr - 4.0 * det, 0.0);
    const double s = std::sqrt(disc);
    return {(tr + s) / 2.0, (tr - s) / 2.0};
}

ComplexMat2 sqrt_psd(const ComplexMat2& m) {
    if (!is_hermitian(m)) throw NonHermitian("sqrt_psd: matrix is not Hermitian");

    constexpr double kClamp = -1e-10;
    auto [mu1, mu2] = eigvals_hermitian2(m);
    if (mu1 < kClamp || mu2 < kClamp)
        throw NegativeEigenvalue("sqrt_psd: eigenvalue below -1e-10");
    mu1 = std::max(mu1, 0.0);
    mu2 = std::max(mu2, 0.0);

    const double r1 = std::sqrt(mu1);
    const double r2 = std::sqrt(mu2);

    if (mu1 - mu2 <= 1e-14) {
        // (Near-)degenerate spectrum: the matrix is a multiple of the
        // identity, and so is its root.
        ComplexMat2 out;
        out(0, 0) = r1;
        out(1, 1) = r2;
        out(0, 1) = out(1, 0) = 0.0;
        ComplexMat2 iso = cplx((r1 + r2) / 2.0) * identity2();
        return iso;
    }

    // Spectral projector onto mu1 is (m - mu2 I)/(mu1 - mu2), so
    // sqrt(m) = r2 I + (r1 - r2) P1.
    const double scale = (r1 - r2) / (mu1 - mu2);
    ComplexMat2 out = m;
    for (auto& v : out.e) v *= scale;
    out(0, 0) += r2 - mu2 * scale;
    out(1, 1) += r2 - mu2 * scale;
    return out;
}

double expectation(const ComplexMat4& rho, const ComplexMat4& obs) {
    cplx t = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) t += rho(r, k) * obs(k, r);
    return std::real(t);
}

} // namespace seqbell
