#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ptsusy/cli.hpp"
#include "ptsusy/errors.hpp"

namespace ptsusy::cli {
namespace {

struct Flags {
    std::string config;
    std::optional<double> nu, beta, hbar, L, mass, tol_abs, tol_rel;
    std::optional<int> m, n, grid;
    std::optional<std::string> format, out, table;
    bool negative_control = false;
    bool gap_factors = false;
};

RunConfig resolve(const Flags& f) {
    RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
    if (f.nu) c.params.nu = *f.nu;
    if (f.beta) c.params.beta = *f.beta;
    if (f.hbar) c.params.hbar = *f.hbar;
    if (f.L) c.params.L = *f.L;
    if (f.mass) c.params.mass = *f.mass;
    if (f.tol_abs) c.tol_abs = *f.tol_abs;
    if (f.tol_rel) c.tol_rel = *f.tol_rel;
    if (f.m) c.m = *f.m;
    if (f.n) c.n = *f.n;
    if (f.grid) c.grid_points = *f.grid;
    if (f.format) c.format = *f.format == "json" ? Format::json : Format::csv;
    if (f.out) c.out = *f.out;
    if (f.table) c.table = *f.table;
    if (f.negative_control) c.negative_control = true;
    if (f.gap_factors) c.gap_factors = true;
    c.validate();
    return c;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Hierarchic SUSY factorization of the trigonometric Poschl-Teller problem"};
    app.require_subcommand(1);
    Flags f;
    app.add_option("--config", f.config, "key = value configuration file")->check(CLI::ExistingFile);
    app.add_option("--nu", f.nu, "nu >= 0");
    app.add_option("--beta", f.beta, "beta >= 0");
    app.add_option("--hbar", f.hbar, "hbar > 0");
    app.add_option("--L", f.L, "well width L > 0");
    app.add_option("--mass", f.mass, "particle mass M > 0");
    app.add_option("--m", f.m, "hierarchy order (index for wavefn, upper bound otherwise)");
    app.add_option("--n", f.n, "excitation number (index for wavefn, upper bound otherwise)");
    app.add_option("--grid", f.grid, "number of grid points");
    app.add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol-abs", f.tol_abs, "quadrature absolute tolerance");
    app.add_option("--tol-rel", f.tol_rel, "quadrature relative tolerance");
    app.add_option("--out", f.out, "output file (default: standard output)");
    app.add_option("--table", f.table, "coherent CSV table")
        ->check(CLI::IsMember({"overlap", "normalization", "resolution"}));
    app.add_flag("--negative-control", f.negative_control, "flip the sign of every superpotential");
    app.add_flag("--gap-factors", f.gap_factors, "add the M and N columns to the spectrum");

    int (*command)(const RunConfig&, std::ostream&) = nullptr;
    for (auto [name, fn, help] :
         {std::tuple{"spectrum", &cmd_spectrum, "energies E_n^(m) and gap factors"},
          std::tuple{"wavefn", &cmd_wavefn, "sampled eigenfunction with a normalization row"},
          std::tuple{"verify", &cmd_verify, "operator identity residual report"},
          std::tuple{"coherent", &cmd_coherent, "coherent-state norms, overlaps and identity resolution"}}) {
        app.add_subcommand(name, help)->fallthrough()->callback([&command, fn] { command = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const RunConfig cfg = resolve(f);
        if (cfg.out.empty()) return command(cfg, std::cout);
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) throw ConfigError("cannot open output file '" + cfg.out + "'", 0, "out");
        return command(cfg, file);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace ptsusy::cli
