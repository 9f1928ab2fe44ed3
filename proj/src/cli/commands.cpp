#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "ptsusy/cli.hpp"
#include "ptsusy/coherent.hpp"
#include "ptsusy/errors.hpp"
#include "ptsusy/operators.hpp"
#include "ptsusy/spectrum.hpp"
#include "ptsusy/wavefn.hpp"

namespace ptsusy::cli {
namespace {

using json = nlohmann::ordered_json;

quad::QuadratureConfig quad_config(const RunConfig& c) {
    quad::QuadratureConfig q;
    q.abs_tol = c.tol_abs;
    q.rel_tol = c.tol_rel;
    return q;
}

json gauge(const ModelParams& p) {
    return {{"hbar", p.hbar}, {"L", p.L}, {"mass", p.mass}, {"epsilon0", p.epsilon0()}};
}

json params_json(const ModelParams& p) { return {{"nu", p.nu}, {"beta", p.beta}}; }

void csv_header(std::ostream& out, const ModelParams& p) {
    out << "# gauge: hbar=" << format_double(p.hbar) << " L=" << format_double(p.L)
        << " mass=" << format_double(p.mass) << " epsilon0=" << format_double(p.epsilon0())
        << " nu=" << format_double(p.nu) << " beta=" << format_double(p.beta) << '\n';
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

// Non-finite residuals become null in JSON.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// N(n, m) is defined for m <= 2n only.
double gap_N_or_nan(const ModelParams& p, int n, int m) {
    return m <= 2 * n ? gap_factor_N(p, n, m) : std::numeric_limits<double>::quiet_NaN();
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    const ModelParams& p = cfg.params;
    json rows = json::array();
    if (cfg.format == Format::csv) {
        csv_header(out, p);
        out << "m,n,E" << (cfg.gap_factors ? ",M,N" : "") << '\n';
    }
    for (int m = 0; m <= cfg.m; ++m)
        for (int n = 0; n <= cfg.n; ++n) {
            const double e = energy(p, LevelIndex{m, n});
            if (cfg.format == Format::csv) {
                out << m << ',' << n << ',' << format_double(e);
                if (cfg.gap_factors) {
                    const double N = gap_N_or_nan(p, n, m);
                    out << ',' << format_double(gap_factor_M(p, n, m)) << ',' << (std::isnan(N) ? "" : format_double(N));
                }
                out << '\n';
            } else {
                json r = {{"m", m}, {"n", n}, {"E", e}};
                if (cfg.gap_factors) {
                    r["M"] = gap_factor_M(p, n, m);
                    r["N"] = number(gap_N_or_nan(p, n, m));
                }
                rows.push_back(std::move(r));
            }
        }
    if (cfg.format == Format::json)
        emit(out, {{"command", "spectrum"}, {"gauge", gauge(p)}, {"params", params_json(p)}, {"rows", rows}});
    return 0;
}

int cmd_wavefn(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    const ModelParams& p = cfg.params;
    const LevelIndex idx{cfg.m, cfg.n};
    const EigenFunction phi(p, idx);
    const auto norm = quad::integrate_interval([&](double x) { return cplx(std::norm(phi(x))); }, 0.0, p.L,
                                               quad_config(cfg));
    const double value = norm.value.real();
    constexpr double tolerance = 1e-8;
    const bool passed = std::abs(value - 1.0) < tolerance;

    json samples = json::array();
    if (cfg.format == Format::csv) {
        csv_header(out, p);
        out << "x,re,im,abs2\n";
    }
    for (int i = 0; i < cfg.grid_points; ++i) {
        const double x = i == cfg.grid_points - 1 ? p.L : p.L * i / (cfg.grid_points - 1.0);
        const cplx v = phi(x);
        if (cfg.format == Format::csv)
            out << format_double(x) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
                << format_double(std::norm(v)) << '\n';
        else
            samples.push_back({{"x", x}, {"re", v.real()}, {"im", v.imag()}, {"abs2", std::norm(v)}});
    }
    if (cfg.format == Format::csv) {
        out << "norm," << format_double(value) << ",0," << format_double(value) << '\n';
    } else {
        emit(out, {{"command", "wavefn"},
                   {"gauge", gauge(p)},
                   {"params", params_json(p)},
                   {"indices", {{"m", idx.m}, {"n", idx.n}}},
                   {"energy", phi.energy()},
                   {"samples", samples},
                   {"norm",
                    {{"value", value}, {"deviation", std::abs(value - 1.0)}, {"tolerance", tolerance}, {"passed", passed}}}});
    }
    return passed ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    const ModelParams& p = cfg.params;
    VerifyOptions opt;
    opt.grid_points = cfg.grid_points;
    opt.quad = quad_config(cfg);
    if (cfg.negative_control) opt.op.w_sign = -1.0;

    std::vector<IdentityResult> results;
    for (int m = 0; m <= cfg.m; ++m)
        for (int n = 0; n <= cfg.n && n + m + 1 <= p.degree_cap; ++n) {
            auto r = verify_operator_identities(p, n, m, opt);
            results.insert(results.end(), r.begin(), r.end());
        }
    for (auto [a, b] : {std::pair{2, 1}, std::pair{1, 2}}) {
        if (std::max(a, b) + 8 > p.degree_cap) continue;
        auto r = verify_open_identities(p, a, b, opt);
        results.insert(results.end(), r.begin(), r.end());
    }

    int mandatory = 0, failed = 0;
    for (const auto& r : results)
        if (r.mandatory) {
            ++mandatory;
            if (!r.passed) ++failed;
        }

    if (cfg.format == Format::csv) {
        csv_header(out, p);
        out << "identity,variant,n,m,max_residual,threshold,grid_size,mandatory,passed,note\n";
        for (const auto& r : results)
            out << r.identity << ',' << r.variant << ',' << r.n << ',' << r.m << ',' << format_double(r.max_residual)
                << ',' << format_double(r.threshold) << ',' << r.grid_size << ',' << (r.mandatory ? "true" : "false")
                << ',' << (r.passed ? "true" : "false") << ',' << csv_field(r.note) << '\n';
    } else {
        json arr = json::array();
        for (const auto& r : results)
            arr.push_back({{"identity", r.identity},
                           {"variant", r.variant},
                           {"params", {{"nu", p.nu}, {"beta", p.beta}, {"hbar", p.hbar}, {"L", p.L}, {"mass", p.mass}}},
                           {"indices", {{"n", r.n}, {"m", r.m}}},
                           {"max_residual", number(r.max_residual)},
                           {"grid_size", r.grid_size},
                           {"threshold", r.threshold},
                           {"mandatory", r.mandatory},
                           {"passed", r.passed},
                           {"note", r.note}});
        emit(out, {{"command", "verify"},
                   {"gauge", gauge(p)},
                   {"params", params_json(p)},
                   {"negative_control", cfg.negative_control},
                   {"results", arr},
                   {"summary", {{"mandatory_total", mandatory}, {"mandatory_failed", failed}, {"passed", failed == 0}}}});
    }
    return failed == 0 ? 0 : 1;
}

int cmd_coherent(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    const ModelParams& p = cfg.params;
    const auto qc = quad_config(cfg);
    quad::QuadratureConfig overlap_cfg = qc;
    overlap_cfg.abs_tol = std::min(qc.abs_tol, 1e-15);
    constexpr double norm_tol = 1e-8, overlap_tol = 1e-8, resolution_tol = 1e-6;
    bool ok = true;

    json levels = json::array();
    const bool csv = cfg.format == Format::csv;
    if (csv) {
        csv_header(out, p);
        if (cfg.table == "overlap")
            out << "m,q,p,q2,p2,re,im,abs,quad_re,quad_im,deviation,passed\n";
        else if (cfg.table == "normalization")
            out << "m,q,p,log_R,norm,deviation,passed\n";
        else
            out << "m,x,G,err_est,offset,alt_measure_G,passed\n";
    }
    for (int m = 0; m <= cfg.m; ++m) {
        std::vector<CoherentState> states;
        for (double q : cfg.q_values)
            for (double pp : cfg.p_values) states.emplace_back(p, m, PhasePoint{q * p.L, pp * p.momentum_scale()});

        json norms = json::array();
        for (const auto& s : states) {
            const double nv =
                quad::integrate_interval([&](double x) { return cplx(std::norm(s(x))); }, 0.0, p.L, qc).value.real();
            const double dev = std::abs(nv - 1.0);
            const bool pass = dev < norm_tol;
            ok = ok && pass;
            if (csv && cfg.table == "normalization")
                out << m << ',' << format_double(s.label().q) << ',' << format_double(s.label().p) << ','
                    << format_double(s.log_R()) << ',' << format_double(nv) << ',' << format_double(dev) << ','
                    << (pass ? "true" : "false") << '\n';
            norms.push_back({{"q", s.label().q}, {"p", s.label().p}, {"log_R", s.log_R()}, {"norm", nv},
                             {"deviation", dev}, {"passed", pass}});
        }

        json overlaps = json::array();
        for (const auto& s1 : states)
            for (const auto& s2 : states) {
                const cplx c = cs_overlap(s1, s2);
                const cplx qv = cs_overlap_quadrature(s1, s2, overlap_cfg).value;
                const double dev = std::abs(c - qv);
                const bool pass = dev <= overlap_tol * std::abs(qv) + 10.0 * overlap_cfg.abs_tol &&
                                  std::abs(c) <= 1.0 + 1e-10;
                ok = ok && pass;
                if (csv && cfg.table == "overlap")
                    out << m << ',' << format_double(s1.label().q) << ',' << format_double(s1.label().p) << ','
                        << format_double(s2.label().q) << ',' << format_double(s2.label().p) << ','
                        << format_double(c.real()) << ',' << format_double(c.imag()) << ','
                        << format_double(std::abs(c)) << ',' << format_double(qv.real()) << ','
                        << format_double(qv.imag()) << ',' << format_double(dev) << ',' << (pass ? "true" : "false")
                        << '\n';
                overlaps.push_back({{"q", s1.label().q}, {"p", s1.label().p}, {"q2", s2.label().q},
                                    {"p2", s2.label().p}, {"re", c.real()}, {"im", c.imag()}, {"abs", std::abs(c)},
                                    {"quad_re", qv.real()}, {"quad_im", qv.imag()}, {"deviation", dev},
                                    {"passed", pass}});
            }

        json resolution = json::array();
        for (int i = 0; i < cfg.grid_points; ++i) {
            const double x = p.L * (i + 1.0) / (cfg.grid_points + 1.0);
            const auto r = resolution_kernel(p, m, x, qc);
            const bool pass = std::abs(r.G - 1.0) < resolution_tol;
            ok = ok && pass;
            if (csv && cfg.table == "resolution")
                out << m << ',' << format_double(r.x) << ',' << format_double(r.G) << ',' << format_double(r.err_est)
                    << ',' << format_double(r.offset) << ',' << format_double(r.alt_measure_G) << ','
                    << (pass ? "true" : "false") << '\n';
            resolution.push_back({{"x", r.x}, {"G", r.G}, {"err_est", r.err_est}, {"offset", r.offset},
                                  {"alt_measure_G", r.alt_measure_G}, {"tolerance", resolution_tol},
                                  {"passed", pass}});
        }
        levels.push_back({{"m", m}, {"normalization", norms}, {"overlaps", overlaps}, {"resolution", resolution}});
    }
    if (!csv)
        emit(out, {{"command", "coherent"}, {"gauge", gauge(p)}, {"params", params_json(p)}, {"levels", levels},
                   {"passed", ok}});
    return ok ? 0 : 1;
}

}  // namespace ptsusy::cli
