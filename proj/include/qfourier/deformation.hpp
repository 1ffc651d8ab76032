#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace qfourier {

// Deformation parameter q >= 1 of the generalized exponential calculus.
//
// q = 1 is the classical (undeformed) limit.  For q > 1 the deformed
// exponential has a pole on the positive real axis at
//
//     z_q = 1 / (q - 1)
//
// and a branch cut along [z_q, +inf).  Operations that require a stricter
// window (the d-dimensional transform needs q < 1 + 1/d) check it through
// require_transform_window().
class deformation_parameter {
public:
    explicit deformation_parameter(double q) : q_(q) {
        if (!std::isfinite(q) || q < 1.0)
            throw domain_error("deformation parameter must satisfy q >= 1, got " +
                               std::to_string(q));
    }

    double q() const { return q_; }

    bool classical() const { return q_ == 1.0; }

    // Location z_q of the pole of the deformed exponential (+inf when classical).
    double pole() const {
        return classical() ? std::numeric_limits<double>::infinity() : 1.0 / (q_ - 1.0);
    }

    // The d-dimensional transform pair is invertible for q < 1 + 1/d only.
    // q = 1 passes as the classical limit; the boundary itself is rejected.
    void require_transform_window(int dimension) const {
        require_dimension(dimension);
        const double boundary = 1.0 + 1.0 / dimension;
        if (q_ >= boundary)
            throw validity_error("q = " + std::to_string(q_) +
                                 " outside the validity window [1, " +
                                 std::to_string(boundary) + ") for dimension " +
                                 std::to_string(dimension));
    }

    // Operations built on the gamma-mixture representation need strict deformation.
    void require_deformed() const {
        if (classical())
            throw validity_error("operation requires q > 1 (strictly deformed)");
    }

    static void require_dimension(int dimension) {
        if (dimension < 1 || dimension > 3)
            throw dimension_error("dimension must be 1, 2 or 3, got " +
                                  std::to_string(dimension));
    }

private:
    double q_;
};

} // namespace qfourier
