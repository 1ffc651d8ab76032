#pragma once

#include <cmath>
#include <cstdlib>

#include "deformation.hpp"
#include "errors.hpp"

namespace qfourier {

namespace detail {

// Minimal double-double arithmetic (hi + lo, |lo| <= ulp(hi)/2).  The
// deformed trigonometric series alternates with intermediate terms up to
// ~1e8 while summing to O(1e-2) near the convergence radius, so the term
// recurrence must carry more than double precision to avoid losing
// everything to cancellation.
struct ddouble {
    double hi = 0.0;
    double lo = 0.0;
};

inline ddouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline ddouble quick_two_sum(double a, double b) { // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline ddouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline ddouble dd_add(ddouble x, ddouble y) {
    ddouble s = two_sum(x.hi, y.hi);
    s.lo += x.lo + y.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline ddouble dd_mul(ddouble x, ddouble y) {
    ddouble p = two_prod(x.hi, y.hi);
    p.lo += x.hi * y.lo + x.lo * y.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline ddouble dd_div_d(ddouble x, double c) {
    const double q1 = x.hi / c;
    const double r = std::fma(-q1, c, x.hi) + x.lo;
    return quick_two_sum(q1, r / c);
}

// A_m = m (q-1) + 1, the m-th factor of the deformed factorial weights.
inline ddouble qtrig_factor(double m, double qm1) {
    ddouble a = two_prod(m, qm1);
    ddouble s = two_sum(a.hi, 1.0);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

// Shared series driver: starts from term0 (n = 0) and applies
//   t_{n+1} = -t_n * x^2 * A_{m0+2n} * A_{m0+2n+1} / ((d0+2n)(d0+2n+1))
// which covers both parities of the deformed trigonometric expansion.
inline double qtrig_series(double q, double x, double term0, int m0, int d0, double tol) {
    constexpr int term_cap = 10000;
    const double qm1 = q - 1.0; // exact for q in [1, 2]
    const ddouble x2 = two_prod(x, x);
    ddouble term{term0, 0.0};
    ddouble sum = term;
    double prev_mag = std::abs(term0);
    for (int n = 0; n < term_cap; ++n) {
        ddouble t = dd_mul(term, x2);
        t = dd_mul(t, qtrig_factor(static_cast<double>(m0 + 2 * n), qm1));
        t = dd_mul(t, qtrig_factor(static_cast<double>(m0 + 2 * n + 1), qm1));
        t = dd_div_d(t, -static_cast<double>(d0 + 2 * n));
        t = dd_div_d(t, static_cast<double>(d0 + 2 * n + 1));
        term = t;
        sum = dd_add(sum, term);
        const double mag = std::abs(term.hi);
        // Converged once the newest term is below tol and the terms shrink
        // (non-strictly, so x = 0 terminates); past that point the ratio
        // stays below ((q-1)x)^2 < 1.
        if (mag < tol && mag <= prev_mag)
            return sum.hi + sum.lo;
        prev_mag = mag;
    }
    throw convergence_error("deformed trigonometric series did not converge within " +
                            std::to_string(term_cap) + " terms");
}

} // namespace detail

// Deformed factorial weight w_n(q) = prod_{k=0..n} [k (q-1) + 1].
//
// w_n(1) = 1 for every n; for q > 1 the product grows superexponentially and
// saturates to +inf past the double range (the series code never forms it
// directly, it uses term ratios).
inline double omega_factor(const deformation_parameter& p, int n) {
    if (n < 0)
        throw domain_error("omega_factor requires n >= 0");
    const double qm1 = p.q() - 1.0;
    double w = 1.0;
    for (int k = 1; k <= n; ++k)
        w *= static_cast<double>(k) * qm1 + 1.0;
    return w;
}

// Deformed cosine: cos_q x = 1 + sum_{n>=1} w_{2n-1}(q) (-1)^n x^(2n) / (2n)!.
//
// Converges for |x| < z_q (all x when classical).  Terms are summed with the
// stated stop rule: quit when the latest term magnitude falls below tol while
// decreasing; more than 10^4 terms raises convergence_error, as does |x|
// at or beyond the convergence radius.
inline double q_cos(const deformation_parameter& p, double x, double tol = 1e-13) {
    if (!p.classical() && std::abs(x) >= p.pole())
        throw convergence_error("deformed cosine series diverges for |x| >= z_q");
    return detail::qtrig_series(p.q(), x, 1.0, 0, 1, tol);
}

// Deformed sine: sin_q x = sum_{n>=0} w_{2n}(q) (-1)^n x^(2n+1) / (2n+1)!.
inline double q_sin(const deformation_parameter& p, double x, double tol = 1e-13) {
    if (!p.classical() && std::abs(x) >= p.pole())
        throw convergence_error("deformed sine series diverges for |x| >= z_q");
    return detail::qtrig_series(p.q(), x, x, 1, 2, tol);
}

} // namespace qfourier
