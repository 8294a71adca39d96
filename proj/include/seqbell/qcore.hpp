#pragma once

#include <array>
#include <complex>

#include "seqbell/errors.hpp"

namespace seqbell {

using cplx = std::complex<double>;

// Row-major fixed-size complex matrix.  The whole problem lives on two
// qubits, so only N = 2 and N = 4 are instantiated; this keeps the linear
// algebra dependency-free and trivially inlineable.
template <int N>
struct ComplexMat {
    std::array<cplx, static_cast<std::size_t>(N) * N> e{};

    cplx& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * N + c]; }
    const cplx& operator()(int r, int c) const { return e[static_cast<std::size_t>(r) * N + c]; }

    static ComplexMat identity() {
        ComplexMat m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    ComplexMat adjoint() const {
        ComplexMat m;
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    friend ComplexMat operator+(const ComplexMat& a, const ComplexMat& b) {
        ComplexMat m;
        for (std::size_t i = 0; i < a.e.size(); ++i) m.e[i] = a.e[i] + b.e[i];
        return m;
    }

    friend ComplexMat operator-(const ComplexMat& a, const ComplexMat& b) {
        ComplexMat m;
        for (std::size_t i = 0; i < a.e.size(); ++i) m.e[i] = a.e[i] - b.e[i];
        return m;
    }

    friend ComplexMat operator*(const ComplexMat& a, const ComplexMat& b) {
        ComplexMat m;
        for (int r = 0; r < N; ++r)
            for (int k = 0; k < N; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx{}) continue;
                for (int c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
            }
        return m;
    }

    friend ComplexMat operator*(cplx s, const ComplexMat& a) {
        ComplexMat m;
        for (std::size_t i = 0; i < a.e.size(); ++i) m.e[i] = s * a.e[i];
        return m;
    }

    friend ComplexMat operator*(const ComplexMat& a, cplx s) { return s * a; }
};

using ComplexMat2 = ComplexMat<2>;
using ComplexMat4 = ComplexMat<4>;

// Largest absolute entry of a - b (the infinity norm used by all the
// "within 1e-10" contracts).
template <int N>
double max_abs_diff(const ComplexMat<N>& a, const ComplexMat<N>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.e.size(); ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
    return m;
}

template <int N>
bool is_hermitian(const ComplexMat<N>& m, double tol = 1e-10) {
    return max_abs_diff(m, m.adjoint()) <= tol;
}

const ComplexMat2& pauli_x();
const ComplexMat2& pauli_y();
const ComplexMat2& pauli_z();
const ComplexMat2& identity2();
const ComplexMat4& identity4();

// Kronecker product with row index 2*i_a + i_b (first factor = Alice).
ComplexMat4 tensor(const ComplexMat2& a, const ComplexMat2& b);

// Trace over the second (Bob) factor.
ComplexMat2 partial_trace_B(const ComplexMat4& m);

// Eigenvalues of a Hermitian 2x2 matrix via trace/determinant, descending.
std::array<double, 2> eigvals_hermitian2(const ComplexMat2& m);

// Hermitian PSD square root of a 2x2 matrix, computed from the closed-form
// eigendecomposition.  Eigenvalues in [-1e-10, 0) are clamped to zero;
// anything lower throws NegativeEigenvalue.
ComplexMat2 sqrt_psd(const ComplexMat2& m);

// Re tr(rho * obs); the imaginary part is a rounding artifact for Hermitian
// inputs and is discarded.
double expectation(const ComplexMat4& rho, const ComplexMat4& obs);

} // namespace seqbell
