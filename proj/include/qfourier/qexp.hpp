#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "deformation.hpp"
#include "errors.hpp"

namespace qfourier {

using complex = std::complex<double>;

namespace detail {

// log(1 + w) for complex w, stable when |w| is small.
inline complex log1p_complex(complex w) {
    const double wr = w.real();
    const double wi = w.imag();
    // |1+w|^2 - 1 = 2*wr + wr^2 + wi^2, fed through log1p to keep accuracy.
    return {0.5 * std::log1p(2.0 * wr + wr * wr + wi * wi), std::atan2(wi, 1.0 + wr)};
}

} // namespace detail

// Value of the deformed exponential together with its branch-cut flag.
struct qexp_value {
    complex value;
    bool on_cut = false; // z was on the cut [z_q, inf); value is the upper-half-plane limit
};

// Deformed exponential exp_q(z) = [1 + (1-q) z]^(1/(1-q)), principal branch.
//
// For q > 1 this is u^(-z_q) with u = 1 - (q-1) z and z_q = 1/(q-1): an
// isolated pole at z = z_q and a branch cut along [z_q, +inf).  Values on the
// cut are the limit from the upper half-plane (arg u -> -pi) and are flagged.
// Throws pole_error at the pole, and when the result overflows so close to it
// that no finite value is meaningful.
inline qexp_value q_exp_checked(const deformation_parameter& p, complex z) {
    if (p.classical())
        return {std::exp(z), false};
    const double q = p.q();
    const double zq = p.pole();
    if (z.imag() == 0.0) {
        const double x = z.real();
        if (x == zq)
            throw pole_error("deformed exponential pole at z = " + std::to_string(zq));
        if (x > zq) {
            // On the cut: u is a negative real, approached from below in the
            // u-plane when z comes from the upper half-plane.
            const double mag = (q - 1.0) * x - 1.0; // |u|
            const complex w = -zq * complex(std::log(mag), -std::numbers::pi);
            const complex v = std::exp(w);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw pole_error("deformed exponential overflow near the pole");
            return {v, true};
        }
        // Below the pole the base is positive and the value real.
        const double lu = std::log1p(-(q - 1.0) * x);
        const double v = std::exp(-zq * lu);
        if (!std::isfinite(v))
            throw pole_error("deformed exponential overflow near the pole");
        return {complex(v, 0.0), false};
    }
    const complex w = (1.0 - q) * z; // u = 1 + w
    const complex v = std::exp(-zq * detail::log1p_complex(w));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw pole_error("deformed exponential overflow near the pole");
    return {v, false};
}

inline complex q_exp(const deformation_parameter& p, complex z) {
    return q_exp_checked(p, z).value;
}

// Real-line variant with the positive-part cutoff,
// exp_q(x) = [1 + (1-q) x]_+^(1/(1-q)).
//
// Total on the reals: for q > 1 it coincides with the complex version below
// the pole and diverges to +inf at x >= z_q (returned as +inf, not an error).
inline double q_exp_real(const deformation_parameter& p, double x) {
    if (p.classical())
        return std::exp(x);
    const double q = p.q();
    if (x >= p.pole())
        return std::numeric_limits<double>::infinity();
    return std::exp(-p.pole() * std::log1p(-(q - 1.0) * x));
}

// Deformed product z (x)_q w = (z^(1-q) + w^(1-q) - 1)^(1/(1-q)), principal
// branches throughout.
//
// Either operand equal to 0 returns 0 (the continuous limit).  Throws
// domain_error when the combined base lands on the principal-branch cut
// (-inf, 0], where no limit convention applies.
inline complex q_product(const deformation_parameter& p, complex z, complex w) {
    if (p.classical())
        return z * w;
    if (z == 0.0 || w == 0.0)
        return 0.0;
    const double a = 1.0 - p.q();
    const complex base = std::pow(z, a) + std::pow(w, a) - 1.0;
    if (base.imag() == 0.0 && base.real() <= 0.0)
        throw domain_error("deformed product base on the principal-branch cut");
    return std::pow(base, 1.0 / a);
}

// Positive-real variant with the cutoff convention,
// x (x)_q y = [x^(1-q) + y^(1-q) - 1]_+^(1/(1-q)).
//
// For q > 1 a non-positive bracket means divergence (returned as +inf),
// mirroring the cutoff behavior of q_exp_real.
inline double q_product_real(const deformation_parameter& p, double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw domain_error("deformed real product requires positive operands");
    if (p.classical())
        return x * y;
    const double a = 1.0 - p.q();
    const double base = std::pow(x, a) + std::pow(y, a) - 1.0;
    if (base <= 0.0)
        return std::numeric_limits<double>::infinity();
    return std::pow(base, 1.0 / a);
}

} // namespace qfourier
