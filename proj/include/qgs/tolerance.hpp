#pragma once

#include <limits>

#include "qgs/errors.hpp"

namespace qgs {

// Numeric thresholds shared across the library.  rank_tol is relative to the
// largest singular value, root_tol is absolute on the root abscissa,
// residual_tol bounds verification residuals.
struct ToleranceConfig {
    double rank_tol = 1e-10;
    double root_tol = 1e-12;
    double residual_tol = 1e-9;

    void validate() const {
        if (!(rank_tol > 0.0) || !(root_tol > 0.0) || !(residual_tol > 0.0))
            throw InputError("tolerances must be strictly positive");
        if (rank_tol < std::numeric_limits<double>::epsilon())
            throw InputError("rank_tol below machine epsilon");
    }
};

} // namespace qgs
