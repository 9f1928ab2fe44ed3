#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ptsusy/cli.hpp"
#include "ptsusy/errors.hpp"

namespace ptsusy::cli {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line, const std::string& key) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ConfigError("expected a number, got '" + v + "'", line, key);
    return out;
}

int to_int(const std::string& v, int line, const std::string& key) {
    int out = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ConfigError("expected an integer, got '" + v + "'", line, key);
    return out;
}

bool to_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("expected true or false, got '" + v + "'", line, key);
}

std::vector<double> to_list(const std::string& v, int line, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), line, key));
    if (out.empty()) throw ConfigError("expected a comma-separated list", line, key);
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, int, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"nu", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.params.nu = to_double(v, l, k); }},
        {"beta", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.params.beta = to_double(v, l, k); }},
        {"hbar", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.params.hbar = to_double(v, l, k); }},
        {"L", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.params.L = to_double(v, l, k); }},
        {"mass", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.params.mass = to_double(v, l, k); }},
        {"degree_cap", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.params.degree_cap = to_int(v, l, k); }},
        {"m", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.m = to_int(v, l, k); }},
        {"m_max", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.m = to_int(v, l, k); }},
        {"n", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.n = to_int(v, l, k); }},
        {"n_max", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.n = to_int(v, l, k); }},
        {"grid_points", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.grid_points = to_int(v, l, k); }},
        {"tol_abs", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.tol_abs = to_double(v, l, k); }},
        {"tol_rel", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.tol_rel = to_double(v, l, k); }},
        {"format",
         [](RunConfig& c, const std::string& v, int l, const std::string& k) {
             if (v == "csv")
                 c.format = Format::csv;
             else if (v == "json")
                 c.format = Format::json;
             else
                 throw ConfigError("expected csv or json, got '" + v + "'", l, k);
         }},
        {"out", [](RunConfig& c, const std::string& v, int, const std::string&) { c.out = v; }},
        {"negative_control", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.negative_control = to_bool(v, l, k); }},
        {"gap_factors", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.gap_factors = to_bool(v, l, k); }},
        {"table", [](RunConfig& c, const std::string& v, int, const std::string&) { c.table = v; }},
        {"q_values", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.q_values = to_list(v, l, k); }},
        {"p_values", [](RunConfig& c, const std::string& v, int l, const std::string& k) { c.p_values = to_list(v, l, k); }},
    };
    return table;
}

}  // namespace

void RunConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& what) { throw ConfigError(what, 0, field); };
    try {
        params.validate();
    } catch (const DomainError& e) {
        fail("params", e.what());
    }
    if (m < 0) fail("m", "must be nonnegative");
    if (n < 0) fail("n", "must be nonnegative");
    if (grid_points < 2) fail("grid_points", "need at least two points");
    if (!(tol_abs > 0.0)) fail("tol_abs", "must be positive");
    if (!(tol_rel > 0.0)) fail("tol_rel", "must be positive");
    if (table != "overlap" && table != "normalization" && table != "resolution")
        fail("table", "expected overlap, normalization or resolution");
    for (double q : q_values)
        if (!(q > 0.0 && q < 1.0)) fail("q_values", "entries are fractions of L strictly inside (0, 1)");
    if (p_values.empty()) fail("p_values", "must not be empty");
}

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", line, s);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("unknown key", line, key);
        if (value.empty()) throw ConfigError("missing value", line, key);
        it->second(base, value, line, key);
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, "config");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

}  // namespace ptsusy::cli
