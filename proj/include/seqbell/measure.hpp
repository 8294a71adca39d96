#pragma once

#include <array>
#include <utility>
#include <vector>

#include "seqbell/qcore.hpp"

namespace seqbell {

// Bloch-sphere direction of a dichotomic spin measurement.
struct Direction {
    double theta = 0.0; // polar angle, [0, pi]
    double phi = 0.0;   // azimuthal angle, [0, 2*pi)

    std::array<double, 3> unit_vector() const;
};

// Outcome label of a dichotomic measurement.
struct Outcome {
    int value = +1; // +1 or -1
};

// Unsharp spin measurement along `direction` with sharpness lambda:
// effects E_{+-} = (I +- lambda n.sigma)/2.  The optimal-pointer trade-off
// F^2 + G^2 = 1 holds by construction with F = sqrt(1 - lambda^2), G = lambda.
struct UnsharpMeasurement {
    Direction direction;
    double lambda = 1.0;

    double G() const { return lambda; }
    double F() const;
};

// n.sigma for the given direction: Hermitian, traceless, eigenvalues +-1.
ComplexMat2 observable(const Direction& d);

// (E_plus, E_minus); throws InvalidParameter unless lambda in (0, 1].
std::pair<ComplexMat2, ComplexMat2> effects(const UnsharpMeasurement& m);

// Lueders update on Bob's factor: probability Tr[(I (x) E_b) rho] and
// post-state (I (x) sqrt(E_b)) rho (I (x) sqrt(E_b)) / prob.
// Throws ZeroProbability when prob < 1e-14.
std::pair<double, ComplexMat4> luders_update_B(const ComplexMat4& rho, const UnsharpMeasurement& m,
                                               const Outcome& outcome);

// Non-selective, setting-averaged channel on Bob's side:
//   sum_k probs[k] sum_b (I (x) sqrt(E_b^k)) rho (I (x) sqrt(E_b^k)).
// Throws InvalidParameter if the weights do not sum to 1 (within 1e-12) or
// the list lengths differ.
ComplexMat4 decohere_channel(const ComplexMat4& rho, const std::vector<UnsharpMeasurement>& settings,
                             const std::vector<double>& probs);

// Convenience overload with equal weights 1/n (the unbiased-input scenario).
ComplexMat4 decohere_channel(const ComplexMat4& rho, const std::vector<UnsharpMeasurement>& settings);

} // namespace seqbell
