// Acceptance gate: ten numbered end-to-end checks with pinned tolerances and
// runtime budgets, one pass/fail line each.  The process exit code is the
// number of failed checks, so a zero exit is a full pass.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include <qfourier/qfourier.hpp>

#include "integral_catalog.hpp"

using namespace qfourier;

namespace {

constexpr double pi = std::numbers::pi;

int failures = 0;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

template <class Body>
void run(int index, const char* name, double budget_seconds, Body&& body) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        pass = false;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > budget_seconds) {
        pass = false;
        detail += ", over the runtime budget";
    }
    std::printf("criterion %2d (%s): %s (%s; %.1f s of %.0f s budget)\n", index, name,
                pass ? "PASS" : "FAIL", detail.c_str(), seconds, budget_seconds);
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

} // namespace

int main() {
    run(1, "gamma blend reproduces the deformed exponential", 10.0, [](std::string& detail) {
        constexpr double bound = 1e-8;
        quadrature_config cfg;
        double worst = 0.0;
        for (double q : {1.1, 1.3, 1.5}) {
            deformation_parameter p(q);
            const double zq = p.pole();
            for (int j = 0; j < 10; ++j) {
                const complex z(std::min(-2.0 + 0.3 * j, zq - 0.6), -1.5 + 0.35 * j);
                worst = std::max(worst, superstatistics_check(p, z, cfg).gap);
            }
        }
        detail = "max gap " + fmt(worst) + ", bound " + fmt(bound);
        return worst < bound;
    });

    run(2, "delta normalization closed form and classical limit", 1.0,
        [](std::string& detail) {
            double form_gap = 0.0;
            for (int j = 1; j <= 20; ++j) {
                const double q = 1.0 + 0.047 * j;
                const double got = delta_normalization(deformation_parameter(q), 1);
                const double truth = 2.0 * pi / (2.0 - q);
                form_gap = std::max(form_gap, std::abs(got - truth) / truth);
            }
            double limit_gap = 0.0;
            const double eps = 1e-4;
            for (int d = 1; d <= 3; ++d) {
                const double got = delta_normalization(deformation_parameter(1.0 + eps), d);
                const double truth = std::pow(2.0 * pi, d);
                limit_gap = std::max(limit_gap, std::abs(got - truth) / truth);
            }
            detail = "closed-form gap " + fmt(form_gap) + " (bound 1e-12), limit gap " +
                     fmt(limit_gap) + " (bound 1e-3)";
            return form_gap < 1e-12 && limit_gap < 1e-3;
        });

    run(3, "delta sifting recovers the test density at the origin", 120.0,
        [](std::string& detail) {
            constexpr double bound = 1e-3;
            quadrature_config cfg;
            struct probe {
                int d;
                double q;
            };
            double worst = 0.0;
            for (const auto& pr : {probe{1, 1.3}, probe{2, 1.4}, probe{3, 1.25}}) {
                const auto rep =
                    delta_sift(deformation_parameter(pr.q), gaussian_density(pr.d), cfg);
                worst = std::max(worst, rep.rel_error);
            }
            detail = "max relative error " + fmt(worst) + ", bound " + fmt(bound);
            return worst < bound;
        });

    run(4, "pointwise inversion recovers the gaussian", 300.0, [](std::string& detail) {
        quadrature_config line;
        line.abs_tol = 3e-4;
        line.rel_tol = 1e-6;
        line.k_max = 200.0;
        const auto f1 = gaussian_density(1);
        deformation_parameter p1(1.1);
        double worst1 = 0.0;
        for (double x : {-1.0, 0.0, 1.0}) {
            const std::array<double, 1> xv{x};
            const double got = q_fourier_invert_at(p1, f1, xv, line);
            const double truth = std::exp(-x * x) / std::sqrt(pi);
            worst1 = std::max(worst1, std::abs(got - truth) / truth);
        }
        quadrature_config plane;
        plane.abs_tol = 5e-3;
        plane.rel_tol = 3e-3;
        plane.k_max = 40.0;
        const auto f2 = gaussian_density(2);
        const std::array<double, 2> origin{0.0, 0.0};
        const double got2 = q_fourier_invert_at(deformation_parameter(1.2), f2, origin, plane);
        const double rel2 = std::abs(got2 - 1.0 / pi) * pi;
        detail = "1-d max relative error " + fmt(worst1) + " (bound 1e-3), 2-d " +
                 fmt(rel2) + " (bound 1e-2)";
        return worst1 < 1e-3 && rel2 < 1e-2;
    });

    run(5, "transform validity window enforcement", 1.0, [](std::string& detail) {
        quadrature_config cfg;
        int rejected = 0;
        for (int d = 1; d <= 3; ++d) {
            const auto f = gaussian_density(d);
            std::array<double, 3> k{};
            const std::span<const double> kv(k.data(), static_cast<std::size_t>(d));
            for (double bump : {0.0, 0.01}) {
                try {
                    q_fourier_forward(deformation_parameter(1.0 + 1.0 / d + bump), f, kv,
                                      cfg);
                } catch (const validity_error&) {
                    ++rejected;
                }
            }
        }
        detail = std::to_string(rejected) + " of 6 boundary calls rejected";
        return rejected == 6;
    });

    run(6, "deformed trig series matches the closed form", 5.0, [](std::string& detail) {
        constexpr double bound = 1e-10;
        deformation_parameter p(1.1);
        const double reach = 0.9 * p.pole();
        double worst = 0.0;
        for (int j = 0; j < 50; ++j) {
            const double x = -reach + 2.0 * reach * j / 49.0;
            const complex truth = q_exp(p, complex(0.0, x));
            worst = std::max(worst, std::abs(q_cos(p, x) - truth.real()));
            worst = std::max(worst, std::abs(q_sin(p, x) - truth.imag()));
        }
        detail = "max gap " + fmt(worst) + " over 50 points, bound " + fmt(bound);
        return worst < bound;
    });

    run(7, "window series tracks the gaussian", 600.0, [](std::string& detail) {
        constexpr double bound = 1e-2;
        const auto f = gaussian_density(1);
        double worst[2] = {0.0, 0.0};
        const double qs[2] = {1.0, 1.1};
        for (int i = 0; i < 2; ++i) {
            const deformation_parameter p(qs[i]);
            series_approximation s(p, f, 4.0, 50);
            for (int j = 0; j <= 400; ++j) {
                const double x = -2.0 + 4.0 * j / 400.0;
                const std::array<double, 1> xv{x};
                worst[i] = std::max(worst[i], std::abs(s.evaluate(x) - f(xv)));
            }
        }
        detail = "max deviation " + fmt(worst[0]) + " at q=1, " + fmt(worst[1]) +
                 " at q=1.1, bound " + fmt(bound);
        return worst[0] < bound && worst[1] < bound;
    });

    run(8, "jump overshoot: classical constant and deformed attenuation", 900.0,
        [](std::string& detail) {
            const auto f = uniform_density(4.0);
            series_approximation oracle(deformation_parameter(1.0), f, 4.0, 500);
            const double dense = gibbs_overshoot(oracle, 1.0).overshoot;
            series_approximation classical(deformation_parameter(1.0), f, 4.0, 50);
            series_approximation deformed(deformation_parameter(1.1), f, 4.0, 50);
            const double ov1 = gibbs_overshoot(classical, 1.0).overshoot;
            const double ov11 = gibbs_overshoot(deformed, 1.0).overshoot;
            auto interior_std = [&](const series_approximation& s) {
                std::vector<double> v;
                for (int j = 0; j <= 40; ++j)
                    v.push_back(s.evaluate(-0.8 + 1.6 * j / 40.0));
                double mean = 0.0;
                for (double x : v)
                    mean += x;
                mean /= static_cast<double>(v.size());
                double var = 0.0;
                for (double x : v)
                    var += (x - mean) * (x - mean);
                return std::sqrt(var / static_cast<double>(v.size()));
            };
            const double sd1 = interior_std(classical);
            const double sd11 = interior_std(deformed);
            const bool constant_ok = std::abs(ov1 - 0.0895) <= 0.01;
            detail = "overshoot " + fmt(ov1) + " at q=1 (dense check " + fmt(dense) +
                     ", target 0.0895 +- 0.01), " + fmt(ov11) +
                     " at q=1.1; interior spread " + fmt(sd1) + " vs " + fmt(sd11);
            return constant_ok && ov11 < ov1 && sd11 < sd1;
        });

    run(9, "barely deformed transform matches the classical limit", 60.0,
        [](std::string& detail) {
            constexpr double bound = 1e-2;
            deformation_parameter p(1.001);
            const auto f = gaussian_density(1);
            quadrature_config cfg;
            double worst = 0.0;
            for (int j = 0; j < 10; ++j) {
                const double k = -2.0 + 0.45 * j;
                const double x = 0.8 - 0.2 * j;
                const std::array<double, 1> kv{k};
                const std::array<double, 1> xv{x};
                const auto got = q_fourier_forward(p, f, kv, xv, cfg);
                const complex truth =
                    std::exp(complex(0.0, -k * x)) * std::exp(-0.25 * k * k);
                worst = std::max(worst, std::abs(got.value - truth));
            }
            detail = "max gap " + fmt(worst) + " over 10 pairs, bound " + fmt(bound);
            return worst < bound;
        });

    run(10, "quadrature error estimates are honest", 10.0, [](std::string& detail) {
        quadrature_config cfg;
        int within = 0;
        for (const auto& entry : qfourier_tests::integral_catalog()) {
            const auto r = entry.run(cfg);
            if (std::abs(r.value - entry.truth) <= 3.0 * r.error_estimate)
                ++within;
        }
        detail = std::to_string(within) + " of 10 integrals within three estimates";
        return within >= 9;
    });

    std::printf("summary: %d of 10 criteria passed\n", 10 - failures);
    return failures;
}
