#pragma once

#include <stdexcept>
#include <string>

namespace qgs {

// Malformed documents, out-of-range indices, inadmissible request parameters.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures: singular systems, resonant denominators, momenta at
// which the requested quantity is undefined.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class SingularMatrixError : public NumericError {
public:
    SingularMatrixError(const std::string& what, double pivot)
        : NumericError(what), pivot_magnitude(pivot) {}

    double pivot_magnitude;
};

// k = 0 or k = pi, where reflection/transmission coefficients are undefined.
class EdgeMomentumError : public NumericError {
public:
    explicit EdgeMomentumError(const std::string& what) : NumericError(what) {}
};

// A surgery denominator (or block pivot) vanished at the requested momentum.
class ResonantDenominatorError : public NumericError {
public:
    ResonantDenominatorError(const std::string& what, double mag)
        : NumericError(what), magnitude(mag) {}

    double magnitude;
};

class GateFormError : public NumericError {
public:
    explicit GateFormError(const std::string& what) : NumericError(what) {}
};

} // namespace qgs
