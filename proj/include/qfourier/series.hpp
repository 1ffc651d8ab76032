#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "deformation.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "quadrature.hpp"
#include "transform.hpp"

namespace qfourier {

// Plain truncated Fourier series of a one-dimensional density on a period-T
// window, with the coefficients c_n = integral of f(y) e^{i k_n y} dy cached
// at construction so evaluation is O(N).  The coefficient integrals run over
// the window [-T/2, T/2] intersected with the support, so the series always
// represents the periodized restriction of f to the window (mass outside the
// window is ignored rather than aliased in).  Returns the signed partial sum.
class classical_fourier_series {
public:
    classical_fourier_series(const density_function& f, double period, int n_terms,
                             const quadrature_config& cfg = {})
        : period_(period), n_(n_terms) {
        if (f.dimension != 1)
            throw dimension_error("the classical series is one-dimensional");
        if (!(period > 0.0))
            throw domain_error("period must be positive");
        if (n_terms < 0)
            throw domain_error("the term count must be nonnegative");
        const double lo = std::max(f.support.lo[0], -0.5 * period);
        const double hi = std::min(f.support.hi[0], 0.5 * period);
        if (!(lo < hi))
            throw domain_error("the density support does not meet the window");
        coefficients_.reserve(static_cast<std::size_t>(n_terms) + 1);
        for (int n = 0; n <= n_terms; ++n) {
            const double k = 2.0 * std::numbers::pi * n / period;
            auto r = integrate_finite<complex>(
                [&](double y) {
                    return f(std::span<const double>(&y, 1)) * std::exp(complex(0.0, k * y));
                },
                lo, hi, cfg);
            coefficients_.push_back(r.value);
            converged_ = converged_ && r.converged;
        }
    }

    double evaluate(double x) const {
        double sum = coefficients_[0].real();
        for (int n = 1; n < static_cast<int>(coefficients_.size()); ++n) {
            const double k = 2.0 * std::numbers::pi * n / period_;
            sum += 2.0 * (coefficients_[static_cast<std::size_t>(n)] *
                          std::exp(complex(0.0, -k * x)))
                             .real();
        }
        return sum / period_;
    }

    const std::vector<complex>& coefficients() const { return coefficients_; }
    double period() const { return period_; }
    int n_terms() const { return n_; }
    bool converged() const { return converged_; }

private:
    double period_;
    int n_;
    std::vector<complex> coefficients_{};
    bool converged_ = true;
};

// Truncated deformed series on a period-T window:
//
//   S_N(x) = [ (2-q)/T * ( F(0) + sum_{n=1..N} 2 Re F(k_n; k_n x) ) ]^(1/(2-q))
//
// with k_n = 2 pi n / T and F the forward transform of f.  Valid for q in
// [1, 2); at q = 1 it reduces to the plain Fourier partial sum, which is
// served from the cached classical coefficients (signed, no clamping: the
// exponent is exactly 1 there, so a negative partial sum is a legitimate
// value rather than a branch problem).
//
// For q > 1 the deformed kernel does not factor through the shift, so every
// evaluation point needs its own batch of N+1 coefficient integrals.  A
// negative bracket is clamped to zero when clamp_negative is set; otherwise
// the real part of the principal complex power |b|^e cos(pi e) is returned.
class series_approximation {
public:
    struct evaluation {
        double value = 0.0;
        double bracket = 0.0;
        bool clamped = false;
        bool converged = true;
    };

    series_approximation(const deformation_parameter& p, density_function f, double period,
                         int n_terms, const quadrature_config& cfg = {},
                         bool clamp_negative = true)
        : p_(p), f_(std::move(f)), period_(period), n_(n_terms), cfg_(cfg),
          clamp_(clamp_negative) {
        if (f_.dimension != 1)
            throw dimension_error("the series approximation is one-dimensional");
        if (!(p_.q() < 2.0))
            throw validity_error("the series approximation requires q in [1, 2)");
        if (!(period_ > 0.0))
            throw domain_error("period must be positive");
        if (n_ < 0)
            throw domain_error("the term count must be nonnegative");
        // Restrict the coefficient integrals to the window: the series
        // represents f on [-T/2, T/2], so support outside it must not leak
        // into the coefficients.
        f_.support.lo[0] = std::max(f_.support.lo[0], -0.5 * period_);
        f_.support.hi[0] = std::min(f_.support.hi[0], 0.5 * period_);
        if (!(f_.support.lo[0] < f_.support.hi[0]))
            throw domain_error("the density support does not meet the window");
        if (p_.classical())
            classical_.emplace(f_, period_, n_, cfg_);
    }

    evaluation evaluate_checked(double x) const {
        if (classical_) {
            const double value = classical_->evaluate(x);
            return {value, value, false, classical_->converged()};
        }
        bool ok = true;
        double sum = 0.0;
        for (int n = 0; n <= n_; ++n) {
            const double k = 2.0 * std::numbers::pi * n / period_;
            auto r = q_fourier_forward(p_, f_, std::span<const double>(&k, 1),
                                       std::span<const double>(&x, 1), cfg_);
            ok = ok && r.converged;
            sum += (n == 0 ? 1.0 : 2.0) * r.value.real();
        }
        const double bracket = (2.0 - p_.q()) / period_ * sum;
        const double exponent = 1.0 / (2.0 - p_.q());
        if (bracket >= 0.0)
            return {std::pow(bracket, exponent), bracket, false, ok};
        if (clamp_)
            return {0.0, bracket, true, ok};
        const double magnitude = std::pow(-bracket, exponent);
        return {magnitude * std::cos(std::numbers::pi * exponent), bracket, false, ok};
    }

    double evaluate(double x) const { return evaluate_checked(x).value; }

    const density_function& density() const { return f_; }
    const deformation_parameter& deformation() const { return p_; }
    double period() const { return period_; }
    int n_terms() const { return n_; }

private:
    deformation_parameter p_;
    density_function f_;
    double period_;
    int n_;
    quadrature_config cfg_;
    bool clamp_;
    std::optional<classical_fourier_series> classical_{};
};

struct gibbs_report {
    double overshoot = 0.0; // max of (S - high_level) / jump_size, at least 0
    double location = 0.0;  // where the max was found
    double jump_location = 0.0;
    double jump_size = 0.0;
    double high_level = 0.0; // max of the density itself over the scan grid
    double window = 0.0;
    int grid_points = 0;
};

// Measures the overshoot of the truncated series next to a jump of the
// density.  The scan runs over a uniform grid on the high side of the jump
// within the given half-width window (default 2 T / N, the natural width of
// the first oscillation lobes) and reports
//
//   overshoot = max(0, max_j (S(x_j) - high_level) / jump_size)
//
// where high_level is the maximum of the density itself over the same grid,
// so ordinary approximation of a varying density does not register as
// overshoot.  jump_size = 0 means "measure it from the density" by probing
// both sides of jump_location; pass it explicitly to normalize a smooth
// density against a reference jump.  A grid coarser than window / 50 cannot
// resolve the overshoot lobe and raises grid_error.
inline gibbs_report gibbs_overshoot(const series_approximation& s, double jump_location,
                                    double jump_size = 0.0, double window = 0.0,
                                    int grid_points = 400) {
    if (s.n_terms() < 1)
        throw domain_error("the overshoot scan needs at least one oscillating term");
    const double w = window > 0.0 ? window : 2.0 * s.period() / s.n_terms();
    if (grid_points < 50)
        throw grid_error("the overshoot grid must be finer than window / 50");
    const density_function& f = s.density();
    const double probe = w * 1e-3;
    const double left = jump_location - probe;
    const double right = jump_location + probe;
    const double f_left = f(std::span<const double>(&left, 1));
    const double f_right = f(std::span<const double>(&right, 1));
    if (jump_size <= 0.0 && f_left == f_right)
        throw domain_error("the density shows no jump at the given location");
    const double side = f_left >= f_right ? -1.0 : 1.0;
    gibbs_report rep;
    rep.jump_location = jump_location;
    rep.jump_size = jump_size > 0.0 ? jump_size : std::abs(f_left - f_right);
    rep.window = w;
    rep.grid_points = grid_points;
    const double step = w / grid_points;
    std::vector<double> values(static_cast<std::size_t>(grid_points));
    rep.high_level = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid_points; ++j) {
        const double x = jump_location + side * (j + 0.5) * step;
        values[static_cast<std::size_t>(j)] = s.evaluate(x);
        rep.high_level = std::max(rep.high_level, f(std::span<const double>(&x, 1)));
    }
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid_points; ++j) {
        const double x = jump_location + side * (j + 0.5) * step;
        const double excess =
            (values[static_cast<std::size_t>(j)] - rep.high_level) / rep.jump_size;
        if (excess > best) {
            best = excess;
            rep.location = x;
        }
    }
    rep.overshoot = std::max(best, 0.0);
    return rep;
}

} // namespace qfourier
