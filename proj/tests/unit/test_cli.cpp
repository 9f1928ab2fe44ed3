#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ptsusy/cli.hpp"
#include "ptsusy/errors.hpp"

using namespace ptsusy;
using namespace ptsusy::cli;

namespace {

std::string run_cmd(int (*cmd)(const RunConfig&, std::ostream&), const RunConfig& cfg, int* status = nullptr) {
    std::ostringstream out;
    const int s = cmd(cfg, out);
    if (status) *status = s;
    return out.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string l;
    while (std::getline(ss, l)) out.push_back(l);
    return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
    const auto c = parse_config("# comment\nnu = 2.5\nbeta=3 # trailing\n\nm_max = 1\nn_max=4\nformat = json\n"
                                "tol_rel = 1e-9\nq_values = 0.25, 0.75\n");
    CHECK(c.params.nu == 2.5);
    CHECK(c.params.beta == 3.0);
    CHECK(c.m == 1);
    CHECK(c.n == 4);
    CHECK(c.format == Format::json);
    CHECK(c.tol_rel == 1e-9);
    CHECK(c.q_values == std::vector<double>{0.25, 0.75});
}

TEST_CASE("config errors carry line and field") {
    auto expect = [](const std::string& text, int line, const std::string& field) {
        try {
            parse_config(text);
            FAIL("no error for: " << text);
        } catch (const ConfigError& e) {
            CHECK(e.line == line);
            CHECK(e.field == field);
        }
    };
    expect("nu = 1\nbogus = 2\n", 2, "bogus");
    expect("nu = 1\n\nbeta = abc\n", 3, "beta");
    expect("grid_points = 4.5\n", 1, "grid_points");
    expect("# x\nformat = xml\n", 2, "format");
    expect("nu 1\n", 1, "nu 1");
    expect("m =\n", 1, "m");
    expect("negative_control = maybe\n", 1, "negative_control");
}

TEST_CASE("validation") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.params.nu = -1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.grid_points = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.q_values = {0.0};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.table = "other";
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("property: format_double round-trips") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::uint64_t> bits;
    int checked = 0;
    while (checked < 2000) {
        const std::uint64_t b = bits(rng);
        double v;
        std::memcpy(&v, &b, sizeof v);
        if (!std::isfinite(v)) continue;
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
        CHECK(s.size() <= 24);
        ++checked;
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("spectrum examples") {
    RunConfig c;
    c.params.nu = 0;
    c.params.beta = 0;
    c.m = 1;
    c.n = 3;
    int status = -1;
    const auto out = lines(run_cmd(cmd_spectrum, c, &status));
    CHECK(status == 0);
    REQUIRE(out.size() == 2 + 8);
    CHECK(out[0].rfind("# gauge:", 0) == 0);
    CHECK(out[1] == "m,n,E");
    const double e0 = std::numbers::pi * std::numbers::pi;
    for (int n = 0; n < 4; ++n) {
        const auto row = out[2 + n];
        CHECK(row.rfind("0," + std::to_string(n) + ",", 0) == 0);
        CHECK(std::stod(row.substr(row.rfind(',') + 1)) == doctest::Approx(e0 * (n + 1) * (n + 1)).epsilon(1e-15));
    }
    for (int n = 0; n < 3; ++n) CHECK(out[6 + n].substr(out[6 + n].rfind(',')) == out[3 + n].substr(out[3 + n].rfind(',')));
}

TEST_CASE("spectrum JSON with gap factors") {
    RunConfig c;
    c.params.nu = 1;
    c.params.beta = 2;
    c.m = 0;
    c.n = 0;
    c.gap_factors = true;
    c.format = Format::json;
    const auto j = nlohmann::json::parse(run_cmd(cmd_spectrum, c));
    CHECK(j["command"] == "spectrum");
    CHECK(j["rows"][0]["E"].get<double>() == doctest::Approx(3 * std::numbers::pi * std::numbers::pi));
    CHECK(j["rows"][0].contains("M"));
}

TEST_CASE("wavefn samples") {
    RunConfig c;
    c.params.nu = 0;
    c.params.beta = 0;
    c.m = 0;
    c.n = 0;
    c.grid_points = 11;
    int status = -1;
    const auto out = lines(run_cmd(cmd_wavefn, c, &status));
    CHECK(status == 0);
    REQUIRE(out.size() == 2 + 11 + 1);
    CHECK(out[1] == "x,re,im,abs2");
    CHECK(out[2] == "0,0,0,0");
    CHECK(out[12].substr(out[12].find(',') + 1) == "0,0,0");
    for (int i = 1; i < 10; ++i) {
        std::stringstream ss(out[2 + i]);
        std::string x, re;
        std::getline(ss, x, ',');
        std::getline(ss, re, ',');
        CHECK(std::stod(re) == doctest::Approx(std::sqrt(2.0) * std::sin(std::numbers::pi * std::stod(x))).epsilon(1e-13));
    }
    const auto& norm = out.back();
    CHECK(norm.rfind("norm,", 0) == 0);
    CHECK(std::abs(std::stod(norm.substr(5)) - 1.0) < 1e-8);
}

TEST_CASE("verify exit status and negative control") {
    RunConfig c;
    c.m = 1;
    c.n = 1;
    c.grid_points = 21;
    c.format = Format::json;
    int status = -1;
    const auto j = nlohmann::json::parse(run_cmd(cmd_verify, c, &status));
    CHECK(status == 0);
    CHECK(j["summary"]["mandatory_failed"] == 0);
    CHECK(j["summary"]["passed"] == true);
    c.negative_control = true;
    const auto k = nlohmann::json::parse(run_cmd(cmd_verify, c, &status));
    CHECK(status != 0);
    bool factorization_failed = false;
    for (const auto& r : k["results"])
        if (r["identity"] == "factorization" && !r["passed"].get<bool>()) factorization_failed = true;
    CHECK(factorization_failed);
}

TEST_CASE("coherent report") {
    RunConfig c;
    c.m = 0;
    c.grid_points = 5;
    c.format = Format::json;
    int status = -1;
    const auto j = nlohmann::json::parse(run_cmd(cmd_coherent, c, &status));
    CHECK(status == 0);
    CHECK(j["passed"] == true);
    for (const auto& o : j["levels"][0]["overlaps"])
        if (o["q"] == o["q2"] && o["p"] == o["p2"]) CHECK(o["abs"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& r : j["levels"][0]["resolution"]) CHECK(std::abs(r["G"].get<double>() - 1.0) < 1e-6);
}

TEST_CASE("determinism") {
    RunConfig c;
    c.m = 1;
    c.n = 2;
    c.gap_factors = true;
    CHECK(run_cmd(cmd_spectrum, c) == run_cmd(cmd_spectrum, c));
    c.grid_points = 7;
    CHECK(run_cmd(cmd_wavefn, c) == run_cmd(cmd_wavefn, c));
}

}  // TEST_SUITE
