#pragma once

#include <cmath>
#include <numbers>

#include "deformation.hpp"
#include "errors.hpp"
#include "log_gamma.hpp"

namespace qfourier {

// Normalization constant of the deformed delta representation in dimension d:
//
//   c(q, d) = (2 pi / (q-1))^d * Gamma(z_q - d) / Gamma(z_q),   z_q = 1/(q-1)
//
// defined for 1 < q < 1 + 1/d (the transform window with the classical
// endpoint excluded; q = 1 raises validity_error since the constant is a
// genuine deformed object, while its q -> 1 limit (2 pi)^d is applied by the
// callers that accept the classical case).  Computed through log-gamma
// differences so nearly-classical q does not overflow the gamma ratio.
inline double delta_normalization(const deformation_parameter& p, int dimension) {
    p.require_transform_window(dimension);
    p.require_deformed();
    const double zq = p.pole();
    const double log_c = dimension * std::log(2.0 * std::numbers::pi / (p.q() - 1.0)) +
                         log_gamma(zq - dimension) - log_gamma(zq);
    return std::exp(log_c);
}

} // namespace qfourier
