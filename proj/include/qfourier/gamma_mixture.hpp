#pragma once

#include <cmath>
#include <limits>

#include "errors.hpp"
#include "log_gamma.hpp"

namespace qfourier {

// Normalized gamma kernel g(eta; t) = eta^eta t^(eta-1) exp(-eta t) / Gamma(eta)
// on t >= 0.  It is the mixing density that writes the deformed exponential
// as a weighted blend of ordinary exponentials; eta plays the role of the
// pole location z_q = 1/(q-1).
//
// Evaluated in log space so large eta (deformation close to classical) does
// not overflow eta^eta before the exponential pulls it back.
inline double gamma_mixture_density(double eta, double t) {
    if (!(eta > 0.0))
        throw domain_error("gamma_mixture_density requires eta > 0");
    if (!(t >= 0.0))
        throw domain_error("gamma_mixture_density requires t >= 0");
    if (t == 0.0) {
        if (eta > 1.0)
            return 0.0;
        if (eta == 1.0)
            return 1.0;
        return std::numeric_limits<double>::infinity();
    }
    const double log_density =
        eta * std::log(eta) + (eta - 1.0) * std::log(t) - eta * t - log_gamma(eta);
    return std::exp(log_density);
}

} // namespace qfourier
