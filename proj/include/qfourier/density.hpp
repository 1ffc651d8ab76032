#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "deformation.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace qfourier {

// A nonnegative integrable function on R^d carrying the structure the
// transform routines need: pointwise evaluation, a support box outside which
// it is negligible (exactly zero when compact is set), and optional per-axis
// factors when it is a product of one-dimensional pieces (this unlocks the
// separable fast paths).
struct density_function {
    int dimension = 1;
    std::function<double(std::span<const double>)> eval;
    box_domain support{};
    bool compact = false;
    bool smooth = true;
    std::vector<std::function<double(double)>> factors{};
    std::string id{};

    double operator()(std::span<const double> x) const { return eval(x); }
};

// Unit-mass isotropic Gaussian p(x) = pi^(-d/2) exp(-|x|^2).  The support box
// [-8, 8]^d leaves a remainder below 1e-27, far under every tolerance used
// here.
inline density_function gaussian_density(int dimension) {
    deformation_parameter::require_dimension(dimension);
    density_function f;
    f.dimension = dimension;
    const double norm = std::pow(std::numbers::pi, -0.5 * dimension);
    f.eval = [norm](std::span<const double> x) {
        double s = 0.0;
        for (double v : x)
            s += v * v;
        return norm * std::exp(-s);
    };
    f.support.dimension = dimension;
    for (int axis = 0; axis < dimension; ++axis) {
        f.support.lo[static_cast<std::size_t>(axis)] = -8.0;
        f.support.hi[static_cast<std::size_t>(axis)] = 8.0;
    }
    f.compact = false;
    f.smooth = true;
    const double axis_norm = 1.0 / std::sqrt(std::numbers::pi);
    for (int axis = 0; axis < dimension; ++axis)
        f.factors.emplace_back([axis_norm](double v) { return axis_norm * std::exp(-v * v); });
    f.id = "gaussian";
    return f;
}

// Unit-mass one-dimensional step density of height 2/period on
// [-period/4, period/4]; the natural square pulse for a period-length window.
inline density_function uniform_density(double period) {
    if (!(period > 0.0))
        throw domain_error("uniform_density requires period > 0");
    density_function f;
    f.dimension = 1;
    const double half = 0.25 * period;
    const double level = 2.0 / period;
    f.eval = [half, level](std::span<const double> x) {
        return std::abs(x[0]) <= half ? level : 0.0;
    };
    f.support.dimension = 1;
    f.support.lo[0] = -half;
    f.support.hi[0] = half;
    f.compact = true;
    f.smooth = false;
    f.factors.emplace_back([half, level](double v) { return std::abs(v) <= half ? level : 0.0; });
    f.id = "uniform";
    return f;
}

// Constant level on the centered box [-halfwidth, halfwidth]^d, zero outside.
inline density_function constant_box_density(int dimension, double level, double halfwidth) {
    deformation_parameter::require_dimension(dimension);
    if (!(halfwidth > 0.0) || !(level > 0.0))
        throw domain_error("constant_box_density requires level > 0 and halfwidth > 0");
    density_function f;
    f.dimension = dimension;
    f.eval = [halfwidth, level](std::span<const double> x) {
        for (double v : x)
            if (std::abs(v) > halfwidth)
                return 0.0;
        return level;
    };
    f.support.dimension = dimension;
    for (int axis = 0; axis < dimension; ++axis) {
        f.support.lo[static_cast<std::size_t>(axis)] = -halfwidth;
        f.support.hi[static_cast<std::size_t>(axis)] = halfwidth;
    }
    f.compact = true;
    f.smooth = false;
    const double axis_level = std::pow(level, 1.0 / dimension);
    for (int axis = 0; axis < dimension; ++axis)
        f.factors.emplace_back(
            [halfwidth, axis_level](double v) { return std::abs(v) <= halfwidth ? axis_level : 0.0; });
    f.id = "box";
    return f;
}

} // namespace qfourier
