#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ptsusy/model.hpp"

namespace ptsusy::cli {

enum class Format { csv, json };

struct RunConfig {
    ModelParams params;
    int m = 2;  // index for wavefn, upper bound for spectrum / verify / coherent
    int n = 3;
    int grid_points = 41;
    Format format = Format::csv;
    double tol_abs = 1e-12;
    double tol_rel = 1e-10;
    std::string out;  // empty: standard output
    bool negative_control = false;
    bool gap_factors = false;
    std::string table = "overlap";  // coherent CSV table: overlap | normalization | resolution
    std::vector<double> q_values{0.2, 0.5, 0.8};  // in units of L
    std::vector<double> p_values{-2.0, 0.0, 2.0};  // in units of pi hbar / L

    void validate() const;
};

// key = value lines; '#' starts a comment. Unknown keys and malformed values
// throw ConfigError carrying the line number and field name.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

// Each command writes its report and returns the process exit status.
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_wavefn(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_coherent(const RunConfig& cfg, std::ostream& out);

// Full command line: ptsusy <command> [flags].
int run(int argc, char** argv);

}  // namespace ptsusy::cli
