#pragma once

#include <cmath>
#include <complex>

#include "qgs/errors.hpp"
#include "qgs/matrix.hpp"

namespace qgs {

// A point on the unit circle, z = exp(ik).  All internal computation uses z;
// k is kept for reporting and quadrature.
class Momentum {
public:
    static Momentum from_k(double k) {
        Momentum m;
        m.k_ = std::remainder(k, 2.0 * M_PI); // canonical representative in (-pi, pi]
        m.z_ = std::polar(1.0, k);
        return m;
    }

    static Momentum from_z(Complex z) {
        if (std::abs(std::abs(z) - 1.0) >= 1e-12)
            throw InputError("momentum must lie on the unit circle");
        Momentum m;
        m.z_ = z / std::abs(z);
        m.k_ = std::arg(m.z_);
        return m;
    }

    Complex z() const { return z_; }
    double k() const { return k_; }

    Momentum conjugate() const {
        Momentum m;
        m.z_ = std::conj(z_);
        m.k_ = -k_;
        return m;
    }

    double energy() const { return -2.0 * std::cos(k_); }

    // k = 0 or pi: reflection/transmission are undefined there.
    bool is_edge(double margin = 1e-12) const {
        return std::min(std::abs(z_ - 1.0), std::abs(z_ + 1.0)) <= margin;
    }

private:
    Momentum() = default;
    Complex z_{1.0, 0.0};
    double k_ = 0.0;
};

} // namespace qgs
