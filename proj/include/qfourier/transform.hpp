#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "deformation.hpp"
#include "delta_constant.hpp"
#include "density.hpp"
#include "errors.hpp"
#include "qexp.hpp"
#include "quadrature.hpp"

namespace qfourier {

// Forward transform at wavevector k with base point x:
//
//   F(k; x) = integral over R^d of  f(y) eq( i k.(y-x) f(y)^(q-1) )  d^d y
//
// for 1 <= q < 1 + 1/d.  x = 0 is the plain transform; the shifted kernel is
// what the inversion formula integrates over k.  At q = 1 this is the
// ordinary Fourier transform of f with the e^{+i k.y} phase convention.
// The phase argument is purely imaginary, so the deformed exponential is
// bounded by 1 and never touches its branch cut here.
inline quadrature_result<complex> q_fourier_forward(const deformation_parameter& p,
                                                    const density_function& f,
                                                    std::span<const double> k,
                                                    std::span<const double> x,
                                                    const quadrature_config& cfg) {
    p.require_transform_window(f.dimension);
    if (static_cast<int>(k.size()) != f.dimension || static_cast<int>(x.size()) != f.dimension)
        throw dimension_error("wavevector and base point must match the density dimension");
    const double qm1 = p.q() - 1.0;
    auto integrand = [&](std::span<const double> y) -> complex {
        const double fy = f(y);
        if (fy == 0.0)
            return {0.0, 0.0};
        double phase = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
            phase += k[i] * (y[i] - x[i]);
        if (qm1 != 0.0)
            phase *= std::pow(fy, qm1);
        return fy * q_exp(p, complex(0.0, phase));
    };
    return integrate_box<complex>(integrand, f.support, cfg);
}

inline quadrature_result<complex> q_fourier_forward(const deformation_parameter& p,
                                                    const density_function& f,
                                                    std::span<const double> k,
                                                    const quadrature_config& cfg) {
    const std::array<double, 3> origin{};
    return q_fourier_forward(p, f, k, std::span<const double>(origin.data(), k.size()), cfg);
}

namespace detail {

// Nested integration of g over k-space R^d, one real-line pass per axis with
// the innermost axis fastest.  In the deformed case the integrand modulus
// decays radially like |k|^(-z_q), so along any single axis (the others
// already integrated out or held fixed) the decay power is at worst
// z_q - (d-1); that conservative per-axis exponent drives the tail fit on
// every level.  Error estimates compose as the outer estimate plus the
// truncated core width times the worst inner estimate.
template <class G>
quadrature_result<complex> k_space_recurse(G& g, int dimension, double zq, bool deformed,
                                           const quadrature_config& cfg,
                                           std::array<double, 3>& k, int axis) {
    quadrature_config line_cfg = cfg;
    line_cfg.tail_decay_exponent =
        deformed ? std::optional<double>(zq - static_cast<double>(dimension - 1))
                 : std::nullopt;
    if (axis == dimension - 1) {
        auto line = [&](double kx) {
            k[static_cast<std::size_t>(axis)] = kx;
            return g(std::span<const double>(k.data(), static_cast<std::size_t>(dimension)));
        };
        return integrate_real_line<complex>(line, line_cfg);
    }
    quadrature_config inner_cfg = cfg;
    inner_cfg.abs_tol = cfg.abs_tol / 20.0;
    bool inner_converged = true;
    bool inner_tail = false;
    double max_inner_err = 0.0;
    long long inner_evaluations = 0;
    auto slice = [&](double kx) {
        k[static_cast<std::size_t>(axis)] = kx;
        auto r = k_space_recurse(g, dimension, zq, deformed, inner_cfg, k, axis + 1);
        inner_converged = inner_converged && r.converged;
        inner_tail = inner_tail || r.tail_unreliable;
        max_inner_err = std::max(max_inner_err, r.error_estimate);
        inner_evaluations += r.evaluations;
        return r.value;
    };
    auto outer = integrate_real_line<complex>(slice, line_cfg);
    outer.error_estimate += 2.0 * cfg.k_max * max_inner_err;
    outer.converged = outer.converged && inner_converged;
    outer.tail_unreliable = outer.tail_unreliable || inner_tail;
    outer.evaluations = inner_evaluations;
    return outer;
}

} // namespace detail

struct inversion_diagnostics {
    quadrature_result<complex> k_integral{};
    double normalization = 0.0; // c(q, d), or (2 pi)^d in the classical case
    double bracket = 0.0;       // Re(k_integral) / normalization
    double exponent = 1.0;      // 1 / (1 - d (q-1))
    bool clamped_zero = false;  // negative bracket within the error bar -> 0
};

// Pointwise inversion: recovers the density value at x as
//
//   f(x) = [ Re( integral of F(k; x) d^d k ) / c(q, d) ]^( 1 / (1 - d (q-1)) )
//
// with the classical reduction f(x) = Re(integral) / (2 pi)^d at q = 1.
// The point must sit strictly inside the support, at least interior_margin
// (a fraction of the per-axis width, default 1%) away from each face: on the
// boundary itself the reconstruction straddles the jump and the formula does
// not apply.  A bracket that dips negative within the accumulated error bar
// is clamped to zero; one negative beyond the error bar raises
// negative_base_error.
inline double q_fourier_invert_at(const deformation_parameter& p, const density_function& f,
                                  std::span<const double> x, const quadrature_config& cfg,
                                  inversion_diagnostics* diagnostics = nullptr,
                                  double interior_margin = 0.01) {
    p.require_transform_window(f.dimension);
    if (static_cast<int>(x.size()) != f.dimension)
        throw dimension_error("evaluation point must match the density dimension");
    for (int axis = 0; axis < f.dimension; ++axis) {
        const double lo = f.support.lo[static_cast<std::size_t>(axis)];
        const double hi = f.support.hi[static_cast<std::size_t>(axis)];
        const double margin = interior_margin * (hi - lo) * (1.0 - 1e-9);
        if (!(x[static_cast<std::size_t>(axis)] >= lo + margin &&
              x[static_cast<std::size_t>(axis)] <= hi - margin))
            throw domain_error("evaluation point must be strictly interior to the support");
    }
    const int d = f.dimension;
    const bool deformed = !p.classical();
    const double zq = p.pole();

    quadrature_config forward_cfg = cfg;
    forward_cfg.abs_tol = cfg.abs_tol / 20.0;
    bool forward_converged = true;
    long long forward_evaluations = 0;
    auto g = [&](std::span<const double> k) {
        auto r = q_fourier_forward(p, f, k, x, forward_cfg);
        forward_converged = forward_converged && r.converged;
        forward_evaluations += r.evaluations;
        return r.value;
    };
    std::array<double, 3> k{};
    auto big = detail::k_space_recurse(g, d, zq, deformed, cfg, k, 0);
    big.evaluations = forward_evaluations;
    big.converged = big.converged && forward_converged;

    inversion_diagnostics local;
    inversion_diagnostics& diag = diagnostics ? *diagnostics : local;
    diag.k_integral = big;
    diag.normalization =
        deformed ? delta_normalization(p, d) : std::pow(2.0 * std::numbers::pi, d);
    diag.exponent = deformed ? 1.0 / (1.0 - d * (p.q() - 1.0)) : 1.0;
    diag.bracket = big.value.real() / diag.normalization;
    diag.clamped_zero = false;
    if (diag.bracket < 0.0) {
        const double error_bar = big.error_estimate / diag.normalization;
        if (-diag.bracket <= error_bar) {
            diag.clamped_zero = true;
            return 0.0;
        }
        throw negative_base_error("inversion bracket negative beyond its error bar");
    }
    return deformed ? std::pow(diag.bracket, diag.exponent) : diag.bracket;
}

struct sift_report {
    double computed = 0.0;
    double expected = 0.0; // test function evaluated at the origin
    double abs_error = 0.0;
    double rel_error = 0.0;
    quadrature_result<complex> fourier_integral{}; // J: phase-space integral of the plain FT
    quadrature_result<double> mixture_moment{};    // M: gamma blend moment (deformed only)
    double normalization = 0.0;
    bool converged = false;
};

namespace detail {

// J = integral over R^d of (integral of phi(y) e^{i u.y} d^d y) d^d u.
// Product densities use one double 1-D chain per axis; otherwise the u
// integral nests over a box-integral evaluation of the plain transform.
inline quadrature_result<complex> phase_space_fourier_integral(const density_function& phi,
                                                               const quadrature_config& cfg) {
    const int d = phi.dimension;
    quadrature_config inner_cfg = cfg;
    inner_cfg.abs_tol = cfg.abs_tol / 20.0;
    if (phi.factors.size() == static_cast<std::size_t>(d)) {
        quadrature_result<complex> total{complex(1.0, 0.0), 0.0, 0, true, false};
        for (int axis = 0; axis < d; ++axis) {
            const auto& factor = phi.factors[static_cast<std::size_t>(axis)];
            const double lo = phi.support.lo[static_cast<std::size_t>(axis)];
            const double hi = phi.support.hi[static_cast<std::size_t>(axis)];
            long long leaf_evaluations = 0;
            auto hat = [&](double u) {
                auto r = integrate_finite<complex>(
                    [&](double y) { return factor(y) * std::exp(complex(0.0, u * y)); }, lo, hi,
                    inner_cfg);
                leaf_evaluations += r.evaluations;
                return r.value;
            };
            auto axis_result = integrate_real_line<complex>(hat, cfg);
            axis_result.evaluations = leaf_evaluations;
            const double axis_mag = detail::qnorm(axis_result.value);
            const double total_mag = detail::qnorm(total.value);
            total.error_estimate =
                total.error_estimate * axis_mag + axis_result.error_estimate * total_mag;
            total.value *= axis_result.value;
            total.evaluations += axis_result.evaluations;
            total.converged = total.converged && axis_result.converged;
            total.tail_unreliable = total.tail_unreliable || axis_result.tail_unreliable;
        }
        return total;
    }
    long long leaf_evaluations = 0;
    auto hat = [&](std::span<const double> u) {
        auto r = integrate_box<complex>(
            [&](std::span<const double> y) {
                double phase = 0.0;
                for (std::size_t i = 0; i < y.size(); ++i)
                    phase += u[i] * y[i];
                return phi(y) * std::exp(complex(0.0, phase));
            },
            phi.support, inner_cfg);
        leaf_evaluations += r.evaluations;
        return r.value;
    };
    std::array<double, 3> u{};
    auto out = k_space_recurse(hat, d, 0.0, false, cfg, u, 0);
    out.evaluations = leaf_evaluations;
    return out;
}

} // namespace detail

// Sifting check of the deformed delta: the delta is the gamma-weighted blend
// of scaled plane-wave integrals, so pairing it with a test density phi and
// integrating in the scale-first order collapses to
//
//   computed = Re(J) * M / c(q, d),
//   J = integral of the plain Fourier transform of phi over all wavevectors,
//   M = integral of g(z_q; t) t^(-d) dt over t in (0, inf),
//
// which should reproduce phi(0).  At q = 1 the blend degenerates and
// computed = Re(J) / (2 pi)^d directly.
inline sift_report delta_sift(const deformation_parameter& p, const density_function& phi,
                              const quadrature_config& cfg) {
    p.require_transform_window(phi.dimension);
    const int d = phi.dimension;
    sift_report rep;
    const std::array<double, 3> zero{};
    rep.expected = phi(std::span<const double>(zero.data(), static_cast<std::size_t>(d)));
    rep.fourier_integral = detail::phase_space_fourier_integral(phi, cfg);
    if (p.classical()) {
        rep.normalization = std::pow(2.0 * std::numbers::pi, d);
        rep.mixture_moment = {1.0, 0.0, 0, true, false};
        rep.computed = rep.fourier_integral.value.real() / rep.normalization;
        rep.converged = rep.fourier_integral.converged && !rep.fourier_integral.tail_unreliable;
    } else {
        const double zq = p.pole();
        rep.normalization = delta_normalization(p, d);
        rep.mixture_moment = integrate_halfline_gamma<double>(
            [&](double t) { return std::pow(t, -static_cast<double>(d)); }, zq, cfg);
        rep.computed =
            rep.fourier_integral.value.real() * rep.mixture_moment.value / rep.normalization;
        rep.converged = rep.fourier_integral.converged && rep.mixture_moment.converged &&
                        !rep.fourier_integral.tail_unreliable &&
                        !rep.mixture_moment.tail_unreliable;
    }
    rep.abs_error = std::abs(rep.computed - rep.expected);
    rep.rel_error =
        rep.expected != 0.0 ? rep.abs_error / std::abs(rep.expected) : rep.abs_error;
    return rep;
}

struct superstatistics_report {
    complex direct{};
    complex mixed{};
    double gap = 0.0;
    quadrature_result<complex> integral{};
};

// Blend identity: for Re z < z_q the deformed exponential equals the
// gamma-weighted mixture of ordinary exponentials,
//   eq(z) = integral of g(z_q; t) e^{t z} dt over t in (0, inf).
inline superstatistics_report superstatistics_check(const deformation_parameter& p, complex z,
                                                    const quadrature_config& cfg) {
    p.require_deformed();
    const double zq = p.pole();
    if (!(z.real() < zq))
        throw domain_error("the exponential blend requires Re z < z_q");
    superstatistics_report rep;
    rep.direct = q_exp(p, z);
    rep.integral =
        integrate_halfline_gamma<complex>([&](double t) { return std::exp(t * z); }, zq, cfg);
    rep.mixed = rep.integral.value;
    rep.gap = std::abs(rep.direct - rep.mixed);
    return rep;
}

struct roundtrip_row {
    std::array<double, 3> x{};
    double reference = 0.0;
    double recovered = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
    bool clamped = false;
};

struct roundtrip_report {
    std::vector<roundtrip_row> rows{};
    double max_abs_error = 0.0;
    double max_rel_error = 0.0;
    double mean_rel_error = 0.0;
    bool all_converged = true;
};

// Forward-then-invert sweep over a list of evaluation points, which must be
// strictly interior to the support.  Per-point errors are relative to the
// true density value there (absolute when that value is zero).
inline roundtrip_report q_fourier_roundtrip(const deformation_parameter& p,
                                            const density_function& f,
                                            std::span<const std::array<double, 3>> points,
                                            const quadrature_config& cfg) {
    p.require_transform_window(f.dimension);
    if (points.empty())
        throw domain_error("roundtrip needs at least one evaluation point");
    const int d = f.dimension;
    roundtrip_report rep;
    for (const auto& point : points) {
        roundtrip_row row;
        row.x = point;
        const std::span<const double> x(row.x.data(), static_cast<std::size_t>(d));
        row.reference = f(x);
        inversion_diagnostics diag;
        row.recovered = q_fourier_invert_at(p, f, x, cfg, &diag);
        row.clamped = diag.clamped_zero;
        row.abs_error = std::abs(row.recovered - row.reference);
        row.rel_error =
            row.reference != 0.0 ? row.abs_error / std::abs(row.reference) : row.abs_error;
        rep.max_abs_error = std::max(rep.max_abs_error, row.abs_error);
        rep.max_rel_error = std::max(rep.max_rel_error, row.rel_error);
        rep.mean_rel_error += row.rel_error;
        rep.all_converged = rep.all_converged && diag.k_integral.converged;
        rep.rows.push_back(row);
    }
    rep.mean_rel_error /= static_cast<double>(rep.rows.size());
    return rep;
}

} // namespace qfourier
