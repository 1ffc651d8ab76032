#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"
#include "gamma_mixture.hpp"

namespace qfourier {

struct quadrature_config {
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
    // Half-width at which the real-line integrand is truncated before the
    // algebraic tail correction takes over.
    double k_max = 200.0;
    // Known algebraic decay power alpha of the integrand (|f(x)| ~ C |x|^-alpha
    // as |x| -> inf).  When set and > 1, the real-line routine fits the tail
    // and adds the closed-form remainder; when unset it can only check that
    // the edge values are negligible.
    std::optional<double> tail_decay_exponent{};
};

template <class T>
struct quadrature_result {
    T value{};
    double error_estimate = 0.0;
    long long evaluations = 0;
    bool converged = false;
    // Set when the infinite-domain remainder could not be bounded reliably
    // (tail fit inconsistent, truncation search hit its cap, or no decay
    // information was available and the edge values were not negligible).
    bool tail_unreliable = false;
};

namespace detail {

inline double qnorm(double x) { return std::abs(x); }
inline double qnorm(const std::complex<double>& z) { return std::abs(z); }

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].  Even indices of xgk are
// the Kronrod-only nodes; odd indices are the embedded 7-point Gauss nodes
// (paired with wg[0..2]) and the center carries wg[3].
inline constexpr std::array<double, 8> gk15_xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> gk15_wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gk15_wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// One Gauss-Kronrod pass over [a, b].  Returns the Kronrod estimate and a
// scaled error that follows the classic (200 |K - G| / resasc)^1.5 model with
// a rounding floor, which in practice overestimates the true error.
template <class T, class F>
std::pair<T, double> gk15(F& f, double a, double b, long long& evaluations) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<T, 7> low{};
    std::array<T, 7> high{};
    const T fc = f(center);
    T resg = fc * gk15_wg[3];
    T resk = fc * gk15_wgk[7];
    double resabs = qnorm(fc) * gk15_wgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = gk15_xgk[static_cast<std::size_t>(j)] * half;
        low[static_cast<std::size_t>(j)] = f(center - dx);
        high[static_cast<std::size_t>(j)] = f(center + dx);
        const T pair_sum = low[static_cast<std::size_t>(j)] + high[static_cast<std::size_t>(j)];
        resk += pair_sum * gk15_wgk[static_cast<std::size_t>(j)];
        resabs += gk15_wgk[static_cast<std::size_t>(j)] *
                  (qnorm(low[static_cast<std::size_t>(j)]) + qnorm(high[static_cast<std::size_t>(j)]));
    }
    for (int j = 0; j < 3; ++j) {
        const std::size_t idx = static_cast<std::size_t>(2 * j + 1);
        resg += (low[idx] + high[idx]) * gk15_wg[static_cast<std::size_t>(j)];
    }
    const T reskh = resk * 0.5;
    double resasc = gk15_wgk[7] * qnorm(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += gk15_wgk[static_cast<std::size_t>(j)] *
                  (qnorm(low[static_cast<std::size_t>(j)] - reskh) +
                   qnorm(high[static_cast<std::size_t>(j)] - reskh));
    const double abs_half = std::abs(half);
    resabs *= abs_half;
    resasc *= abs_half;
    double err = qnorm((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    evaluations += 15;
    return {resk * half, err};
}

template <class T>
struct gk_interval {
    double a = 0.0;
    double b = 0.0;
    T value{};
    double err = 0.0;
};

template <class T>
struct worse_error {
    bool operator()(const gk_interval<T>& x, const gk_interval<T>& y) const {
        return x.err < y.err;
    }
};

} // namespace detail

// Adaptive integration of f over the union of intervals between consecutive
// breakpoints.  The worst-error interval is bisected until the summed error
// estimate meets max(abs_tol, rel_tol * |value|) or the subdivision budget
// runs out; intervals too narrow to split are frozen as-is.
template <class T, class F>
quadrature_result<T> integrate_segments(F&& f, std::vector<double> breakpoints,
                                        const quadrature_config& cfg) {
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    if (breakpoints.size() < 2)
        throw domain_error("integrate_segments needs at least two distinct breakpoints");

    quadrature_result<T> out;
    std::vector<detail::gk_interval<T>> active;
    std::vector<detail::gk_interval<T>> frozen;
    active.reserve(breakpoints.size() + 64);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        auto [v, e] = detail::gk15<T>(f, breakpoints[i], breakpoints[i + 1], out.evaluations);
        active.push_back({breakpoints[i], breakpoints[i + 1], v, e});
    }
    const detail::worse_error<T> cmp;
    std::make_heap(active.begin(), active.end(), cmp);

    T total{};
    double total_err = 0.0;
    const auto recompute = [&] {
        total = T{};
        total_err = 0.0;
        for (const auto& n : active) {
            total += n.value;
            total_err += n.err;
        }
        for (const auto& n : frozen) {
            total += n.value;
            total_err += n.err;
        }
    };
    recompute();

    constexpr double eps = std::numeric_limits<double>::epsilon();
    int splits = 0;
    while (!active.empty() && splits < cfg.max_subdivisions &&
           total_err > std::max(cfg.abs_tol, cfg.rel_tol * detail::qnorm(total))) {
        std::pop_heap(active.begin(), active.end(), cmp);
        const detail::gk_interval<T> worst = active.back();
        active.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        const double scale = std::max({std::abs(worst.a), std::abs(worst.b), 1.0});
        if (worst.b - worst.a <= 50.0 * eps * scale) {
            frozen.push_back(worst);
            continue;
        }
        auto [lv, le] = detail::gk15<T>(f, worst.a, mid, out.evaluations);
        auto [rv, re] = detail::gk15<T>(f, mid, worst.b, out.evaluations);
        active.push_back({worst.a, mid, lv, le});
        std::push_heap(active.begin(), active.end(), cmp);
        active.push_back({mid, worst.b, rv, re});
        std::push_heap(active.begin(), active.end(), cmp);
        ++splits;
        recompute();
    }
    out.value = total;
    out.error_estimate = total_err;
    out.converged = total_err <= std::max(cfg.abs_tol, cfg.rel_tol * detail::qnorm(total));
    return out;
}

// Adaptive integration over a single finite interval.  Starts from a midpoint
// split so a symmetry of the integrand about the center cannot fake instant
// convergence on the very first pass.
template <class T, class F>
quadrature_result<T> integrate_finite(F&& f, double a, double b, const quadrature_config& cfg) {
    if (!(a < b)) {
        if (a == b)
            return {T{}, 0.0, 0, true, false};
        auto r = integrate_finite<T>(std::forward<F>(f), b, a, cfg);
        r.value = -r.value;
        return r;
    }
    return integrate_segments<T>(std::forward<F>(f), {a, 0.5 * (a + b), b}, cfg);
}

// Integration over the whole real line: adaptive core on [-k_max, k_max] with
// geometric pre-splits, then an algebraic tail correction when the decay
// power alpha is known.  The sample at k_max alone bounds the remainder by
// |f(k_max)| k_max / (alpha - 1); when that is already far below tolerance
// the tail is provably negligible and no correction is fitted (sampling
// deeper would only pick up quadrature noise and amplify it by (2 k_max)^alpha).
// Otherwise the tail is fitted as C |x|^-alpha from samples at k_max and
// 2 k_max; the spread between the two one-point fits feeds the error
// estimate, and a spread above half the fitted magnitude marks the tail
// unreliable.
template <class T, class F>
quadrature_result<T> integrate_real_line(F&& f, const quadrature_config& cfg) {
    const double cut = cfg.k_max;
    if (!(cut > 0.0))
        throw domain_error("integrate_real_line requires k_max > 0");
    std::vector<double> pts{-cut, cut};
    for (double b : {0.0, 1.0, -1.0, 4.0, -4.0, 16.0, -16.0, 64.0, -64.0})
        if (b > -cut && b < cut)
            pts.push_back(b);
    auto out = integrate_segments<T>(f, std::move(pts), cfg);

    if (cfg.tail_decay_exponent && *cfg.tail_decay_exponent > 1.0) {
        const double alpha = *cfg.tail_decay_exponent;
        const double near_pow = std::pow(cut, alpha);
        const double far_pow = std::pow(2.0 * cut, alpha);
        const double remainder_scale = std::pow(cut, 1.0 - alpha) / (alpha - 1.0);
        const double negligible =
            0.05 * std::max(cfg.abs_tol, cfg.rel_tol * detail::qnorm(out.value));
        for (double side : {1.0, -1.0}) {
            const T near_sample = f(side * cut);
            ++out.evaluations;
            const double near_bound = detail::qnorm(near_sample) * cut / (alpha - 1.0);
            if (near_bound <= negligible) {
                out.error_estimate += near_bound;
                continue;
            }
            const T c_near = near_sample * near_pow;
            const T c_far = f(side * 2.0 * cut) * far_pow;
            ++out.evaluations;
            out.value += c_far * remainder_scale;
            out.error_estimate += detail::qnorm(c_near - c_far) * remainder_scale;
            const double mag = std::max(detail::qnorm(c_near), detail::qnorm(c_far));
            if (mag > 0.0 && detail::qnorm(c_near - c_far) > 0.5 * mag)
                out.tail_unreliable = true;
        }
        out.converged = out.error_estimate <=
                        std::max(cfg.abs_tol, cfg.rel_tol * detail::qnorm(out.value));
    } else {
        if (cfg.tail_decay_exponent)
            out.tail_unreliable = true; // alpha <= 1: remainder not integrable as fitted
        const double edge =
            std::max(detail::qnorm(f(cut)), detail::qnorm(f(-cut))) * cut;
        out.evaluations += 2;
        if (edge > cfg.abs_tol)
            out.tail_unreliable = true;
    }
    return out;
}

// Integration of f over [0, inf) for integrands with an eventually
// log-concave (at least geometric) tail, such as gamma-type mixing kernels.
// The truncation point doubles until the fitted exponential remainder drops
// below abs_tol / 20; breakpoints cluster geometrically near zero so an
// integrable endpoint singularity t^(p-1), p > 0, is resolved by bisection
// without ever sampling t = 0 (the Kronrod nodes are interior).
template <class T, class F>
quadrature_result<T> integrate_halfline(F&& f, const quadrature_config& cfg) {
    constexpr double cut_cap = 1.0e6;
    long long probe_evaluations = 0;
    double cut = 8.0;
    double tail_bound = 0.0;
    bool found = false;
    while (cut <= cut_cap) {
        const double near_mag = detail::qnorm(f(cut));
        const double far_mag = detail::qnorm(f(1.5 * cut));
        probe_evaluations += 2;
        if (near_mag == 0.0 && far_mag == 0.0) {
            found = true;
            tail_bound = 0.0;
            break;
        }
        if (far_mag < near_mag) {
            const double rate = std::log(near_mag / far_mag) / (0.5 * cut);
            tail_bound = near_mag / rate;
            if (tail_bound < cfg.abs_tol / 20.0) {
                found = true;
                break;
            }
        }
        cut *= 2.0;
    }
    if (!found)
        cut = cut_cap;

    std::vector<double> pts{0.0, cut};
    for (double b : {9.5367431640625e-07, 6.103515625e-05, 0.00390625, 0.0625, 0.25, 0.5, 1.0})
        if (b < cut)
            pts.push_back(b);
    for (double b = 2.0; b < cut; b *= 2.0)
        pts.push_back(b);
    auto out = integrate_segments<T>(f, std::move(pts), cfg);
    out.evaluations += probe_evaluations;
    out.error_estimate += tail_bound;
    if (!found)
        out.tail_unreliable = true;
    out.converged = out.converged && out.error_estimate <=
                    std::max(cfg.abs_tol, cfg.rel_tol * detail::qnorm(out.value));
    return out;
}

// Expectation of f under the gamma mixing density with shape eta:
// integral of f(t) gamma(eta; t) dt over t in (0, inf).  The exponential
// tail of the weight makes the half-line truncation logic applicable as
// long as f does not outgrow e^{eta t}.
template <class T, class F>
quadrature_result<T> integrate_halfline_gamma(F&& f, double eta, const quadrature_config& cfg) {
    return integrate_halfline<T>(
        [&](double t) { return f(t) * gamma_mixture_density(eta, t); }, cfg);
}

// Axis-aligned box in up to three dimensions.
struct box_domain {
    int dimension = 1;
    std::array<double, 3> lo{};
    std::array<double, 3> hi{};
};

namespace detail {

template <class T, class F>
quadrature_result<T> box_recurse(F& f, const box_domain& box, const quadrature_config& cfg,
                                 std::array<double, 3>& point, int axis) {
    const double a = box.lo[static_cast<std::size_t>(axis)];
    const double b = box.hi[static_cast<std::size_t>(axis)];
    if (axis == box.dimension - 1) {
        auto line = [&](double x) {
            point[static_cast<std::size_t>(axis)] = x;
            return f(std::span<const double>(point.data(),
                                             static_cast<std::size_t>(box.dimension)));
        };
        return integrate_finite<T>(line, a, b, cfg);
    }
    quadrature_config inner_cfg = cfg;
    inner_cfg.abs_tol = cfg.abs_tol / (4.0 * std::max(1.0, b - a));
    bool inner_converged = true;
    double max_inner_err = 0.0;
    long long inner_evaluations = 0;
    auto slice = [&](double x) {
        point[static_cast<std::size_t>(axis)] = x;
        auto r = box_recurse<T>(f, box, inner_cfg, point, axis + 1);
        inner_converged = inner_converged && r.converged;
        max_inner_err = std::max(max_inner_err, r.error_estimate);
        inner_evaluations += r.evaluations;
        return r.value;
    };
    auto outer = integrate_finite<T>(slice, a, b, cfg);
    outer.error_estimate += (b - a) * max_inner_err;
    outer.converged = outer.converged && inner_converged;
    outer.evaluations = inner_evaluations;
    return outer;
}

} // namespace detail

// Iterated adaptive integration over an axis-aligned box; the last axis
// varies fastest.  The error estimate composes conservatively as the outer
// estimate plus width times the worst inner estimate, and converged is the
// conjunction across all levels.
template <class T, class F>
quadrature_result<T> integrate_box(F&& f, const box_domain& box, const quadrature_config& cfg) {
    if (box.dimension < 1 || box.dimension > 3)
        throw dimension_error("integrate_box supports dimensions 1 through 3");
    for (int axis = 0; axis < box.dimension; ++axis)
        if (!(box.lo[static_cast<std::size_t>(axis)] < box.hi[static_cast<std::size_t>(axis)]))
            throw domain_error("integrate_box requires lo < hi on every axis");
    std::array<double, 3> point{};
    return detail::box_recurse<T>(f, box, cfg, point, 0);
}

} // namespace qfourier
