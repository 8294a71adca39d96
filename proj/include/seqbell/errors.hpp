#pragma once

#include <stdexcept>
#include <string>

namespace seqbell {

// Base class for every error raised by the library.  The CLI maps
// subtrees of this hierarchy onto its exit codes: input errors -> 2,
// numerical failures -> 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- invalid-input family -------------------------------------------------

class InputError : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public InputError {
public:
    using InputError::InputError;
};

class UnknownInequality : public InputError {
public:
    using InputError::InputError;
};

class UnknownPreset : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class IndexOutOfRange : public InputError {
public:
    using InputError::InputError;
};

class UnsupportedState : public InputError {
public:
    using InputError::InputError;
};

// --- numerical-failure family ----------------------------------------------

class NumericalError : public Error {
public:
    using Error::Error;
};

class NonHermitian : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NegativeEigenvalue : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ZeroProbability : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BoundMismatch : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class Infeasible : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NeverFeasible : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace seqbell
