#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"

#include <qfourier/qfourier.hpp>

using Catch::Matchers::WithinAbs;

namespace {

struct cli_result {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

cli_result run_cli(const std::string& args) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    const auto out_path = dir / ("qfourier_cli_out_" + std::to_string(++counter));
    const auto err_path = dir / ("qfourier_cli_err_" + std::to_string(counter));
    const std::string cmd = std::string(QFOURIER_CLI_PATH) + " " + args + " >" +
                            out_path.string() + " 2>" + err_path.string();
    const int raw = std::system(cmd.c_str());
    cli_result r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return r;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ','))
        cells.push_back(cell);
    return cells;
}

double cell_value(const std::vector<std::string>& cells, std::size_t index) {
    return std::stod(cells.at(index));
}

} // namespace

TEST_CASE("help and usage errors", "[cli]") {
    const auto help = run_cli("--help");
    REQUIRE(help.status == 0);
    REQUIRE(help.out.find("qexp") != std::string::npos);
    REQUIRE(help.out.find("roundtrip") != std::string::npos);

    REQUIRE(run_cli("qexp --no-such-flag").status == 2);
    REQUIRE(run_cli("frobnicate").status == 2);
    REQUIRE(run_cli("").status == 2);
}

TEST_CASE("parameter validation failures exit with code 2", "[cli]") {
    REQUIRE(run_cli("qexp --q 0.5 --mode single").status == 2);
    REQUIRE(run_cli("delta-check --q 2.1").status == 2);
    REQUIRE(run_cli("roundtrip --q 1.6 --d 2 --points 0").status == 2);
    REQUIRE(run_cli("series --q 1.1 --density uniform --n-terms -3").status == 2);
    REQUIRE(run_cli("gibbs --points 10").status == 2);
}

TEST_CASE("repeated runs are byte identical", "[cli]") {
    const std::string args = "superstat --q 1.1,1.3 --re -0.5 --im 0.2";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.status == 0);
    REQUIRE(a.out == b.out);
    REQUIRE_FALSE(a.out.empty());
}

TEST_CASE("single point evaluation emits one csv row", "[cli]") {
    const auto r = run_cli("qexp --mode single --q 1.5 --re -2 --im 0");
    REQUIRE(r.status == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 2);
    REQUIRE(lines[0] == "q,re_z,im_z,re_value,im_value,modulus,argument,on_cut");
    const auto cells = split_cells(lines[1]);
    REQUIRE(cells.size() == 8);
    REQUIRE_THAT(cell_value(cells, 0), WithinAbs(1.5, 1e-15));
    REQUIRE_THAT(cell_value(cells, 3), WithinAbs(0.25, 1e-15));
    REQUIRE_THAT(cell_value(cells, 4), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(cell_value(cells, 7), WithinAbs(0.0, 1e-15));
}

TEST_CASE("single point output matches the library", "[cli]") {
    const auto r = run_cli("qexp --mode single --q 1.1 --re 0 --im 1");
    REQUIRE(r.status == 0);
    const auto cells = split_cells(split_lines(r.out).at(1));
    const qfourier::deformation_parameter p(1.1);
    REQUIRE_THAT(cell_value(cells, 3), WithinAbs(qfourier::q_cos(p, 1.0), 1e-14));
    REQUIRE_THAT(cell_value(cells, 4), WithinAbs(qfourier::q_sin(p, 1.0), 1e-14));
}

TEST_CASE("grid sweep flags the pole and its surroundings", "[cli]") {
    // default bounds [-4, 4]^2 with 17 points/axis put z = 2 (the pole for
    // q = 1.5) exactly on the grid
    const auto r = run_cli("qexp --q 1.5 --points 17");
    REQUIRE(r.status == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 1 + 17 * 17);
    double max_modulus = 0.0;
    bool saw_pole_row = false;
    bool saw_cut_flag = false;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        rows.push_back(split_cells(lines[i]));
        const auto& cells = rows.back();
        const double re_z = cell_value(cells, 1);
        const double im_z = cell_value(cells, 2);
        const double modulus = cell_value(cells, 5);
        if (re_z == 2.0 && im_z == 0.0) {
            saw_pole_row = true;
            REQUIRE(std::isnan(cell_value(cells, 3)));
        } else if (!std::isnan(modulus)) {
            max_modulus = std::max(max_modulus, modulus);
        }
        if (cell_value(cells, 7) == 1.0)
            saw_cut_flag = true;
    }
    REQUIRE(saw_pole_row);
    REQUIRE(saw_cut_flag);
    // every cell attaining the maximum hugs the pole at grid distance 0.5
    for (const auto& cells : rows) {
        const double modulus = cell_value(cells, 5);
        if (!std::isnan(modulus) && modulus > max_modulus * (1.0 - 1e-9)) {
            const double dre = cell_value(cells, 1) - 2.0;
            const double dim = cell_value(cells, 2);
            REQUIRE_THAT(std::sqrt(dre * dre + dim * dim), WithinAbs(0.5, 1e-12));
        }
    }
}

TEST_CASE("json output carries the same table", "[cli]") {
    const auto r = run_cli("superstat --format json --q 1.2 --re -0.3 --im 0.4");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.at("columns").size() == 9);
    REQUIRE(doc.at("columns").at(0) == "q");
    REQUIRE(doc.at("rows").size() == 1);
    const auto& row = doc.at("rows").at(0);
    REQUIRE(row.size() == 9);
    REQUIRE_THAT(row.at(0).get<double>(), WithinAbs(1.2, 1e-15));
    REQUIRE(row.at(7).get<double>() < 1e-8); // blend identity gap
}

TEST_CASE("output file receives exactly the stdout bytes", "[cli]") {
    const auto direct = run_cli("superstat --q 1.25 --re -0.2 --im 0.1");
    REQUIRE(direct.status == 0);
    const auto path = std::filesystem::temp_directory_path() / "qfourier_cli_table.csv";
    std::filesystem::remove(path);
    const auto filed =
        run_cli("superstat --q 1.25 --re -0.2 --im 0.1 --out " + path.string());
    REQUIRE(filed.status == 0);
    REQUIRE(filed.out.empty());
    REQUIRE(slurp(path) == direct.out);
    std::filesystem::remove(path);
}

TEST_CASE("options can come from a config file", "[cli]") {
    const auto path = std::filesystem::temp_directory_path() / "qfourier_cli_config.ini";
    {
        std::ofstream cfg(path);
        cfg << "[superstat]\n"
            << "q=1.2\n"
            << "re=-0.4\n"
            << "im=0.1\n";
    }
    const auto r = run_cli("--config " + path.string() + " superstat");
    REQUIRE(r.status == 0);
    const auto cells = split_cells(split_lines(r.out).at(1));
    REQUIRE_THAT(cell_value(cells, 0), WithinAbs(1.2, 1e-15));
    REQUIRE_THAT(cell_value(cells, 1), WithinAbs(-0.4, 1e-15));
    REQUIRE_THAT(cell_value(cells, 2), WithinAbs(0.1, 1e-15));
    std::filesystem::remove(path);
}

TEST_CASE("sifting check reports near zero error", "[cli]") {
    const auto r = run_cli("delta-check");
    REQUIRE(r.status == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines[0] == "q,d,computed,expected,abs_error,rel_error,fourier_re,fourier_im,"
                        "moment,normalization,converged");
    const auto cells = split_cells(lines.at(1));
    REQUIRE(cells.size() == 11);
    REQUIRE(cell_value(cells, 5) < 1e-6);
    REQUIRE_THAT(cell_value(cells, 10), WithinAbs(1.0, 1e-15));
}

TEST_CASE("roundtrip sweep reports per point errors", "[cli]") {
    const auto r = run_cli("roundtrip");
    REQUIRE(r.status == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines[0] ==
            "q,d,x0,x1,x2,reference,recovered,abs_error,rel_error,clamped");
    REQUIRE(lines.size() == 4); // header + three default points
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_cells(lines[i]);
        REQUIRE(cells.size() == 10);
        REQUIRE(cell_value(cells, 8) < 1e-3);
        REQUIRE_THAT(cell_value(cells, 9), WithinAbs(0.0, 1e-15));
    }
    REQUIRE(r.err.find("max relative error") != std::string::npos);
}

TEST_CASE("flat series rows expose value, reference and bracket", "[cli]") {
    const auto r = run_cli("series --q 1.2 --n-terms 0 --grid 3 --density uniform");
    REQUIRE(r.status == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines[0] == "q,n_terms,x,value,reference,bracket,clamped");
    REQUIRE(lines.size() == 4);
    const double flat = std::pow(0.2, 1.25);
    // grid x = -2, 0, 2: the pulse reference is 0.5 only at the middle point
    const double refs[3] = {0.0, 0.5, 0.0};
    for (int i = 0; i < 3; ++i) {
        const auto cells = split_cells(lines.at(static_cast<std::size_t>(i) + 1));
        REQUIRE_THAT(cell_value(cells, 3), WithinAbs(flat, 1e-10));
        REQUIRE_THAT(cell_value(cells, 4), WithinAbs(refs[i], 1e-15));
        REQUIRE_THAT(cell_value(cells, 6), WithinAbs(0.0, 1e-15));
    }
}

TEST_CASE("overshoot scan compares deformations side by side", "[cli]") {
    const auto r = run_cli("gibbs");
    REQUIRE(r.status == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines[0] == "q,n_terms,overshoot,location,jump_location,jump_size,high_level,"
                        "window,grid_points");
    REQUIRE(lines.size() == 3);
    const auto classical = split_cells(lines.at(1));
    const auto deformed = split_cells(lines.at(2));
    REQUIRE_THAT(cell_value(classical, 0), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(cell_value(deformed, 0), WithinAbs(1.1, 1e-15));
    REQUIRE_THAT(cell_value(classical, 2), WithinAbs(0.0894899, 5e-3));
    REQUIRE(cell_value(deformed, 2) < cell_value(classical, 2));
    REQUIRE_THAT(cell_value(classical, 4), WithinAbs(1.0, 1e-15));
}

TEST_CASE("non converged runs suppress their output and exit 3", "[cli]") {
    const auto path = std::filesystem::temp_directory_path() / "qfourier_cli_failed.csv";
    std::filesystem::remove(path);
    const auto r = run_cli("roundtrip --points 0 --abs-tol 1e-9 --kmax 20 --out " +
                           path.string());
    REQUIRE(r.status == 3);
    REQUIRE(r.out.empty());
    REQUIRE_FALSE(std::filesystem::exists(path));
    REQUIRE(r.err.find("suppressed") != std::string::npos);
}
