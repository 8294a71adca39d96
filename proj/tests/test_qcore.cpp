#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "seqbell/errors.hpp"
#include "seqbell/qcore.hpp"
#include "seqbell/rng.hpp"

using namespace seqbell;

namespace {

ComplexMat2 random_hermitian2(SplitMix64& rng) {
    ComplexMat2 m;
    m(0, 0) = rng.uniform(-2.0, 2.0);
    m(1, 1) = rng.uniform(-2.0, 2.0);
    const cplx off{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    m(0, 1) = off;
    m(1, 0) = std::conj(off);
    return m;
}

ComplexMat2 random_psd2(SplitMix64& rng) {
    ComplexMat2 a;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) a(r, c) = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return a * a.adjoint();
}

ComplexMat2 random2(SplitMix64& rng) {
    ComplexMat2 a;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) a(r, c) = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return a;
}

} // namespace

TEST_CASE("pauli algebra") {
    const auto& x = pauli_x();
    const auto& y = pauli_y();
    const auto& z = pauli_z();
    CHECK(max_abs_diff(x * x, identity2()) == 0.0);
    CHECK(max_abs_diff(y * y, identity2()) == 0.0);
    CHECK(max_abs_diff(z * z, identity2()) == 0.0);
    // sigma_x sigma_y = i sigma_z and cyclic
    CHECK(max_abs_diff(x * y, cplx{0.0, 1.0} * z) == 0.0);
    CHECK(max_abs_diff(y * z, cplx{0.0, 1.0} * x) == 0.0);
    CHECK(max_abs_diff(z * x, cplx{0.0, 1.0} * y) == 0.0);
    for (const auto* s : {&x, &y, &z}) {
        CHECK(is_hermitian(*s));
        CHECK(std::abs(s->trace()) == 0.0);
    }
}

TEST_CASE("matrix arithmetic basics") {
    SplitMix64 rng(11);
    const ComplexMat2 a = random2(rng), b = random2(rng);
    CHECK(max_abs_diff((a + b) - b, a) < 1e-15);
    CHECK(std::abs((a * b).trace() - (b * a).trace()) < 1e-14); // cyclic trace
    CHECK(max_abs_diff((a * b).adjoint(), b.adjoint() * a.adjoint()) < 1e-15);
    CHECK(max_abs_diff(ComplexMat2::identity() * a, a) == 0.0);
}

TEST_CASE("tensor product structure") {
    SplitMix64 rng(7);
    const ComplexMat2 a = random2(rng), b = random2(rng), c = random2(rng), d = random2(rng);
    // mixed-product identity (A (x) B)(C (x) D) = AC (x) BD
    CHECK(max_abs_diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)) < 1e-13);
    CHECK(max_abs_diff(tensor(identity2(), identity2()), identity4()) == 0.0);
    // index convention: row = 2*i_A + i_B
    ComplexMat2 e01;
    e01(0, 1) = 1.0;
    const ComplexMat4 t = tensor(e01, identity2());
    CHECK(t(0, 2) == cplx{1.0});
    CHECK(t(1, 3) == cplx{1.0});
    CHECK(std::abs(t(0, 1)) == 0.0);
}

TEST_CASE("partial trace over B") {
    SplitMix64 rng(13);
    const ComplexMat2 a = random2(rng), b = random2(rng);
    const ComplexMat2 reduced = partial_trace_B(tensor(a, b));
    CHECK(max_abs_diff(reduced, b.trace() * a) < 1e-14);
    CHECK(std::abs(partial_trace_B(identity4()).trace() - cplx{4.0}) < 1e-14);
}

TEST_CASE("hermitian eigenvalues, descending") {
    ComplexMat2 m;
    m(0, 0) = 2.0;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    m(1, 1) = 2.0;
    const auto ev = eigvals_hermitian2(m);
    CHECK(ev[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-12));

    const auto evz = eigvals_hermitian2(pauli_z());
    CHECK(evz[0] == doctest::Approx(1.0));
    CHECK(evz[1] == doctest::Approx(-1.0));

    SplitMix64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const ComplexMat2 h = random_hermitian2(rng);
        const auto e = eigvals_hermitian2(h);
        const double tr = h(0, 0).real() + h(1, 1).real();
        const double det = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)).real();
        CHECK(e[0] + e[1] == doctest::Approx(tr).epsilon(1e-10));
        CHECK(e[0] * e[1] == doctest::Approx(det).epsilon(1e-8));
        CHECK(e[0] >= e[1]);
    }
}

TEST_CASE("psd square root") {
    CHECK(max_abs_diff(sqrt_psd(identity2()), identity2()) < 1e-14);

    SplitMix64 rng(19);
    for (int i = 0; i < 100; ++i) {
        const ComplexMat2 m = random_psd2(rng);
        const ComplexMat2 r = sqrt_psd(m);
        CHECK(max_abs_diff(r * r, m) < 1e-12);
        CHECK(is_hermitian(r, 1e-12));
        CHECK(eigvals_hermitian2(r)[1] >= -1e-12);
    }

    // scalar multiple of the identity (degenerate spectrum)
    const ComplexMat2 two_i = cplx{2.0} * identity2();
    CHECK(max_abs_diff(sqrt_psd(two_i) * sqrt_psd(two_i), two_i) < 1e-14);

    CHECK_THROWS_AS(sqrt_psd(pauli_z()), NegativeEigenvalue); // eigenvalue -1
}

TEST_CASE("expectation values on product observables") {
    // |psi-> = (|01> - |10>)/sqrt(2) written as a density matrix by hand
    ComplexMat4 rho;
    rho(1, 1) = 0.5;
    rho(2, 2) = 0.5;
    rho(1, 2) = -0.5;
    rho(2, 1) = -0.5;
    CHECK(expectation(rho, tensor(pauli_z(), pauli_z())) == doctest::Approx(-1.0));
    CHECK(expectation(rho, tensor(pauli_x(), pauli_x())) == doctest::Approx(-1.0));
    CHECK(expectation(rho, tensor(pauli_y(), pauli_y())) == doctest::Approx(-1.0));
    CHECK(expectation(rho, tensor(pauli_z(), identity2())) == doctest::Approx(0.0));
    CHECK(expectation(rho, identity4()) == doctest::Approx(1.0));
}
