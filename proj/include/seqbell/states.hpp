#pragma once

#include <string>

#include "seqbell/qcore.hpp"

namespace seqbell {

enum class StateKind { Singlet, Schmidt, Werner };

// Parameterized family of two-qubit states:
//   Singlet            (|01> - |10>)/sqrt(2)
//   Schmidt(alpha)     cos(alpha)|00> + sin(alpha)|11>, alpha in [0, pi/2]
//   Werner(w)          w |singlet><singlet| + (1-w) I/4, w in [0, 1]
struct StateSpec {
    StateKind kind = StateKind::Singlet;
    double alpha = 0.0; // Schmidt only
    double w = 1.0;     // Werner only

    static StateSpec singlet() { return {StateKind::Singlet, 0.0, 1.0}; }
    static StateSpec schmidt(double alpha) { return {StateKind::Schmidt, alpha, 1.0}; }
    static StateSpec werner(double w) { return {StateKind::Werner, 0.0, w}; }
};

// Throws InvalidParameter when alpha or w is outside its range.
ComplexMat4 make_state(const StateSpec& spec);

// Concurrence of the Schmidt family: sin(2 alpha).
double concurrence_schmidt(double alpha);

// Round-trip text form used by the CLI: "singlet", "schmidt:<alpha>",
// "werner:<w>".
StateSpec parse_state_spec(const std::string& text);
std::string to_string(const StateSpec& spec);

} // namespace seqbell
