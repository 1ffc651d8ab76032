// Command-line front end for the deformed Fourier toolkit: evaluates the
// deformed exponential along axis sweeps, runs the delta sifting check, the
// forward/inverse roundtrip, the truncated series, the jump-overshoot scan,
// and the exponential blend identity.  Emits CSV or JSON tables.

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <qfourier/qfourier.hpp>

namespace {

using qfourier::complex;

struct table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string render_csv(const table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i)
            out += ',';
        out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += format_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const table& t) {
    nlohmann::json doc;
    doc["columns"] = t.columns;
    doc["rows"] = t.rows;
    return doc.dump(2) + "\n";
}

int write_output(const table& t, const std::string& format, const std::string& out_path) {
    const std::string text = format == "json" ? render_json(t) : render_csv(t);
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return 2;
    }
    file << text;
    return 0;
}

qfourier::density_function make_density(const std::string& id, int dimension, double period) {
    if (id == "gaussian")
        return qfourier::gaussian_density(dimension);
    if (id == "uniform") {
        if (dimension != 1)
            throw qfourier::dimension_error("the uniform density is one-dimensional");
        return qfourier::uniform_density(period);
    }
    throw qfourier::domain_error("unknown density '" + id + "'");
}

constexpr double nan_cell = std::numeric_limits<double>::quiet_NaN();

struct qexp_options {
    double q = 1.4;
    std::string mode = "grid";
    double re = 0.0;
    double im = 0.0;
    double re_min = -4.0;
    double re_max = 4.0;
    double im_min = -4.0;
    double im_max = 4.0;
    double min = -20.0;
    double max = 20.0;
    int points = 81;
};

void qexp_row(const qfourier::deformation_parameter& p, complex z, table& t) {
    std::vector<double> row{p.q(),    z.real(), z.imag(), nan_cell,
                            nan_cell, nan_cell, nan_cell, 0.0};
    try {
        const auto v = qfourier::q_exp_checked(p, z);
        row[3] = v.value.real();
        row[4] = v.value.imag();
        row[5] = std::abs(v.value);
        row[6] = std::arg(v.value);
        row[7] = v.on_cut ? 1.0 : 0.0;
    } catch (const qfourier::pole_error&) {
        // leave the value cells as nan: the grid touched the pole
    }
    t.rows.push_back(std::move(row));
}

int run_qexp(const qexp_options& opt, table& t) {
    if (opt.points < 1)
        throw qfourier::domain_error("--points must be at least 1");
    qfourier::deformation_parameter p(opt.q);
    t.columns = {"q",        "re_z",    "im_z",     "re_value",
                 "im_value", "modulus", "argument", "on_cut"};
    auto sweep = [&](double lo, double hi, int j) {
        return opt.points == 1 ? lo : lo + (hi - lo) * j / (opt.points - 1);
    };
    if (opt.mode == "grid") {
        if (!(opt.re_min <= opt.re_max && opt.im_min <= opt.im_max))
            throw qfourier::domain_error("grid bounds must be ordered");
        for (int a = 0; a < opt.points; ++a)
            for (int b = 0; b < opt.points; ++b)
                qexp_row(p,
                         complex(sweep(opt.re_min, opt.re_max, a),
                                 sweep(opt.im_min, opt.im_max, b)),
                         t);
    } else if (opt.mode == "single") {
        qexp_row(p, complex(opt.re, opt.im), t);
    } else {
        if (!(opt.min <= opt.max))
            throw qfourier::domain_error("--min must not exceed --max");
        for (int j = 0; j < opt.points; ++j) {
            const double s = sweep(opt.min, opt.max, j);
            qexp_row(p, opt.mode == "real-axis" ? complex(s, opt.im) : complex(opt.re, s), t);
        }
    }
    return 0;
}

struct delta_options {
    std::vector<double> q{1.3};
    int d = 1;
    std::string density = "gaussian";
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
    double kmax = 200.0;
    double period = 8.0;
};

int run_delta_check(const delta_options& opt, table& t) {
    qfourier::quadrature_config cfg;
    cfg.abs_tol = opt.abs_tol;
    cfg.rel_tol = opt.rel_tol;
    cfg.k_max = opt.kmax;
    const auto phi = make_density(opt.density, opt.d, opt.period);
    t.columns = {"q",         "d",          "computed",   "expected",
                 "abs_error", "rel_error",  "fourier_re", "fourier_im",
                 "moment",    "normalization", "converged"};
    bool all_ok = true;
    for (double q : opt.q) {
        qfourier::deformation_parameter p(q);
        const auto rep = qfourier::delta_sift(p, phi, cfg);
        t.rows.push_back({q, static_cast<double>(opt.d), rep.computed, rep.expected,
                          rep.abs_error, rep.rel_error, rep.fourier_integral.value.real(),
                          rep.fourier_integral.value.imag(), rep.mixture_moment.value,
                          rep.normalization, rep.converged ? 1.0 : 0.0});
        all_ok = all_ok && rep.converged;
    }
    return all_ok ? 0 : 3;
}

struct roundtrip_options {
    double q = 1.1;
    int d = 1;
    std::string density = "gaussian";
    std::vector<double> points{-1.0, 0.0, 1.0};
    double abs_tol = 3e-4;
    double rel_tol = 1e-8;
    double kmax = 500.0;
    double period = 8.0;
};

int run_roundtrip(const roundtrip_options& opt, table& t) {
    qfourier::quadrature_config cfg;
    cfg.abs_tol = opt.abs_tol;
    cfg.rel_tol = opt.rel_tol;
    cfg.k_max = opt.kmax;
    qfourier::deformation_parameter p(opt.q);
    const auto f = make_density(opt.density, opt.d, opt.period);
    std::vector<std::array<double, 3>> points;
    for (double c : opt.points) {
        std::array<double, 3> x{};
        for (int axis = 0; axis < opt.d; ++axis)
            x[static_cast<std::size_t>(axis)] = c;
        points.push_back(x);
    }
    const auto rep = qfourier::q_fourier_roundtrip(p, f, points, cfg);
    t.columns = {"q",         "d",         "x0",        "x1",        "x2",
                 "reference", "recovered", "abs_error", "rel_error", "clamped"};
    for (const auto& row : rep.rows)
        t.rows.push_back({opt.q, static_cast<double>(opt.d), row.x[0], row.x[1], row.x[2],
                          row.reference, row.recovered, row.abs_error, row.rel_error,
                          row.clamped ? 1.0 : 0.0});
    std::cerr << "roundtrip: max relative error " << format_cell(rep.max_rel_error)
              << ", mean relative error " << format_cell(rep.mean_rel_error)
              << (rep.all_converged ? "" : " (some points not converged)") << "\n";
    return rep.all_converged ? 0 : 3;
}

struct series_options {
    double q = 1.1;
    int n_terms = 50;
    double period = 4.0;
    std::string density = "gaussian";
    int grid = 401;
    std::string clamp = "on";
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
};

int run_series(const series_options& opt, table& t) {
    if (opt.grid < 1)
        throw qfourier::domain_error("--grid must be at least 1");
    qfourier::quadrature_config cfg;
    cfg.abs_tol = opt.abs_tol;
    cfg.rel_tol = opt.rel_tol;
    qfourier::deformation_parameter p(opt.q);
    const auto f = make_density(opt.density, 1, opt.period);
    qfourier::series_approximation s(p, f, opt.period, opt.n_terms, cfg, opt.clamp == "on");
    t.columns = {"q", "n_terms", "x", "value", "reference", "bracket", "clamped"};
    bool all_ok = true;
    for (int j = 0; j < opt.grid; ++j) {
        const double x = opt.grid == 1 ? 0.0
                                       : -0.5 * opt.period +
                                             opt.period * j / (opt.grid - 1);
        const auto e = s.evaluate_checked(x);
        t.rows.push_back({opt.q, static_cast<double>(opt.n_terms), x, e.value,
                          f(std::span<const double>(&x, 1)), e.bracket,
                          e.clamped ? 1.0 : 0.0});
        all_ok = all_ok && e.converged;
    }
    return all_ok ? 0 : 3;
}

struct gibbs_options {
    std::vector<double> q{1.0, 1.1};
    int n_terms = 50;
    double period = 4.0;
    std::string density = "uniform";
    int points = 400;
    double window = 0.0;
    double jump_size = 0.0;
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
};

int run_gibbs(const gibbs_options& opt, table& t) {
    qfourier::quadrature_config cfg;
    cfg.abs_tol = opt.abs_tol;
    cfg.rel_tol = opt.rel_tol;
    const auto f = make_density(opt.density, 1, opt.period);
    const double jump = opt.period / 4.0;
    t.columns = {"q",         "n_terms",    "overshoot", "location", "jump_location",
                 "jump_size", "high_level", "window",    "grid_points"};
    for (double q : opt.q) {
        qfourier::deformation_parameter p(q);
        qfourier::series_approximation s(p, f, opt.period, opt.n_terms, cfg);
        const auto rep =
            qfourier::gibbs_overshoot(s, jump, opt.jump_size, opt.window, opt.points);
        t.rows.push_back({q, static_cast<double>(opt.n_terms), rep.overshoot, rep.location,
                          rep.jump_location, rep.jump_size, rep.high_level, rep.window,
                          static_cast<double>(rep.grid_points)});
    }
    return 0;
}

struct superstat_options {
    std::vector<double> q{1.1};
    double re = -0.7;
    double im = 0.3;
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
};

int run_superstat(const superstat_options& opt, table& t) {
    qfourier::quadrature_config cfg;
    cfg.abs_tol = opt.abs_tol;
    cfg.rel_tol = opt.rel_tol;
    t.columns = {"q",        "re_z",     "im_z", "direct_re", "direct_im",
                 "mixed_re", "mixed_im", "gap",  "converged"};
    bool all_ok = true;
    for (double q : opt.q) {
        qfourier::deformation_parameter p(q);
        const auto rep = qfourier::superstatistics_check(p, complex(opt.re, opt.im), cfg);
        t.rows.push_back({q, opt.re, opt.im, rep.direct.real(), rep.direct.imag(),
                          rep.mixed.real(), rep.mixed.imag(), rep.gap,
                          rep.integral.converged ? 1.0 : 0.0});
        all_ok = all_ok && rep.integral.converged;
    }
    return all_ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deformed Fourier toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "read options from a key=value file");

    std::string format = "csv";
    std::string out_path;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "output file (stdout when omitted)");

    qexp_options qe;
    auto* cmd_qexp =
        app.add_subcommand("qexp", "evaluate the deformed exponential on a grid or sweep");
    cmd_qexp->add_option("--q", qe.q, "deformation parameter")->capture_default_str();
    cmd_qexp->add_option("--mode", qe.mode, "evaluation layout")
        ->check(CLI::IsMember({"grid", "single", "imag-axis", "real-axis"}))
        ->capture_default_str();
    cmd_qexp->add_option("--re", qe.re, "real part (single point / imag-axis sweep)")
        ->capture_default_str();
    cmd_qexp->add_option("--im", qe.im, "imaginary part (single point / real-axis sweep)")
        ->capture_default_str();
    cmd_qexp->add_option("--re-min", qe.re_min, "grid real lower bound")->capture_default_str();
    cmd_qexp->add_option("--re-max", qe.re_max, "grid real upper bound")->capture_default_str();
    cmd_qexp->add_option("--im-min", qe.im_min, "grid imaginary lower bound")
        ->capture_default_str();
    cmd_qexp->add_option("--im-max", qe.im_max, "grid imaginary upper bound")
        ->capture_default_str();
    cmd_qexp->add_option("--min", qe.min, "axis sweep start")->capture_default_str();
    cmd_qexp->add_option("--max", qe.max, "axis sweep end")->capture_default_str();
    cmd_qexp->add_option("--points", qe.points, "samples per axis")->capture_default_str();

    delta_options dc;
    auto* cmd_delta = app.add_subcommand("delta-check", "delta sifting check");
    cmd_delta->add_option("--q", dc.q, "deformation parameters")
        ->delimiter(',')
        ->capture_default_str();
    cmd_delta->add_option("--d", dc.d, "dimension (1-3)")->capture_default_str();
    cmd_delta->add_option("--density", dc.density, "test density")
        ->check(CLI::IsMember({"gaussian", "uniform"}))
        ->capture_default_str();
    cmd_delta->add_option("--period", dc.period, "window length for the uniform density")
        ->capture_default_str();
    cmd_delta->add_option("--abs-tol", dc.abs_tol, "absolute tolerance")->capture_default_str();
    cmd_delta->add_option("--rel-tol", dc.rel_tol, "relative tolerance")->capture_default_str();
    cmd_delta->add_option("--kmax", dc.kmax, "wavevector truncation half-width")
        ->capture_default_str();

    roundtrip_options rt;
    auto* cmd_rt = app.add_subcommand("roundtrip", "forward-then-invert sweep");
    cmd_rt->add_option("--q", rt.q, "deformation parameter")->capture_default_str();
    cmd_rt->add_option("--d", rt.d, "dimension (1-3)")->capture_default_str();
    cmd_rt->add_option("--density", rt.density, "density to reconstruct")
        ->check(CLI::IsMember({"gaussian", "uniform"}))
        ->capture_default_str();
    cmd_rt->add_option("--points", rt.points,
                       "evaluation coordinates, replicated across axes for d > 1")
        ->delimiter(',')
        ->capture_default_str();
    cmd_rt->add_option("--period", rt.period, "window length for the uniform density")
        ->capture_default_str();
    cmd_rt->add_option("--abs-tol", rt.abs_tol, "absolute tolerance")->capture_default_str();
    cmd_rt->add_option("--rel-tol", rt.rel_tol, "relative tolerance")->capture_default_str();
    cmd_rt->add_option("--kmax", rt.kmax, "wavevector truncation half-width")
        ->capture_default_str();

    series_options se;
    auto* cmd_series = app.add_subcommand("series", "truncated series on a window grid");
    cmd_series->add_option("--q", se.q, "deformation parameter")->capture_default_str();
    cmd_series->add_option("--n-terms", se.n_terms, "series truncation order")
        ->capture_default_str();
    cmd_series->add_option("--period", se.period, "window length")->capture_default_str();
    cmd_series->add_option("--density", se.density, "density to expand")
        ->check(CLI::IsMember({"gaussian", "uniform"}))
        ->capture_default_str();
    cmd_series->add_option("--grid", se.grid, "evaluation grid size")->capture_default_str();
    cmd_series->add_option("--clamp-negative", se.clamp, "clamp negative brackets to zero")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    cmd_series->add_option("--abs-tol", se.abs_tol, "absolute tolerance")
        ->capture_default_str();
    cmd_series->add_option("--rel-tol", se.rel_tol, "relative tolerance")
        ->capture_default_str();

    gibbs_options gb;
    auto* cmd_gibbs = app.add_subcommand("gibbs", "overshoot scan next to the density jump");
    cmd_gibbs->add_option("--q", gb.q, "deformation parameters")
        ->delimiter(',')
        ->capture_default_str();
    cmd_gibbs->add_option("--n-terms", gb.n_terms, "series truncation order")
        ->capture_default_str();
    cmd_gibbs->add_option("--period", gb.period, "window length")->capture_default_str();
    cmd_gibbs->add_option("--density", gb.density, "density with a jump")
        ->check(CLI::IsMember({"gaussian", "uniform"}))
        ->capture_default_str();
    cmd_gibbs->add_option("--points", gb.points, "scan grid size")->capture_default_str();
    cmd_gibbs->add_option("--window", gb.window, "scan half-width (0 = 2 period / n_terms)")
        ->capture_default_str();
    cmd_gibbs->add_option("--jump-size", gb.jump_size,
                          "normalizing jump (0 = measure from the density)")
        ->capture_default_str();
    cmd_gibbs->add_option("--abs-tol", gb.abs_tol, "absolute tolerance")
        ->capture_default_str();
    cmd_gibbs->add_option("--rel-tol", gb.rel_tol, "relative tolerance")
        ->capture_default_str();

    superstat_options ss;
    auto* cmd_ss = app.add_subcommand("superstat", "exponential blend identity check");
    cmd_ss->add_option("--q", ss.q, "deformation parameters")
        ->delimiter(',')
        ->capture_default_str();
    cmd_ss->add_option("--re", ss.re, "real part of z")->capture_default_str();
    cmd_ss->add_option("--im", ss.im, "imaginary part of z")->capture_default_str();
    cmd_ss->add_option("--abs-tol", ss.abs_tol, "absolute tolerance")->capture_default_str();
    cmd_ss->add_option("--rel-tol", ss.rel_tol, "relative tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    table t;
    int status = 0;
    try {
        if (cmd_qexp->parsed())
            status = run_qexp(qe, t);
        else if (cmd_delta->parsed())
            status = run_delta_check(dc, t);
        else if (cmd_rt->parsed())
            status = run_roundtrip(rt, t);
        else if (cmd_series->parsed())
            status = run_series(se, t);
        else if (cmd_gibbs->parsed())
            status = run_gibbs(gb, t);
        else if (cmd_ss->parsed())
            status = run_superstat(ss, t);
    } catch (const qfourier::convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const qfourier::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (status == 3) {
        std::cerr << "error: some results did not converge to tolerance; output suppressed\n";
        return 3;
    }
    return write_output(t, format, out_path);
}
