#include "ptsusy/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>

#include "ptsusy/errors.hpp"

namespace ptsusy::quad {

void QuadratureConfig::validate() const {
    if (base_rule_order < 4) throw DomainError("quadrature: rule order must be >= 4");
    if (max_subdivisions < 1) throw DomainError("quadrature: max_subdivisions must be >= 1");
    if (initial_panels < 1 || initial_panels > max_subdivisions)
        throw DomainError("quadrature: initial_panels must lie in [1, max_subdivisions]");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature: tolerances must be positive");
}

namespace {

GaussLegendreRule build_rule(int n) {
    GaussLegendreRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

using Vec = std::vector<cplx>;

double max_abs(const Vec& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

void axpy(Vec& y, const Vec& x, double s = 1.0) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

struct Panel {
    double lo, hi;
    Vec left, right;  // rule values on the two halves
    double err;
};

struct PanelOrder {
    bool operator()(const std::shared_ptr<Panel>& a, const std::shared_ptr<Panel>& b) const {
        return a->err < b->err;
    }
};

class Adaptive {
public:
    Adaptive(const VectorIntegrand& f, int dim, double a, double b, const QuadratureConfig& cfg)
        : f_(f), dim_(dim), a_(a), b_(b), cfg_(cfg), rule_(gauss_legendre(cfg.base_rule_order)),
          scratch_(dim) {}

    VectorResult run() {
        std::priority_queue<std::shared_ptr<Panel>, std::vector<std::shared_ptr<Panel>>, PanelOrder> heap;
        Vec total(dim_, 0.0);
        double err = 0.0;
        const int k = cfg_.initial_panels;
        for (int i = 0; i < k; ++i) {
            const double lo = double(i) / k, hi = double(i + 1) / k;
            auto root = make_panel(lo, hi, rule_on(lo, hi));
            add(total, *root, 1.0);
            err += root->err;
            heap.push(root);
        }
        int panels = k;
        while (err > tolerance(total)) {
            if (panels >= cfg_.max_subdivisions)
                throw SubdivisionLimitError("integrate_interval: panel cap " +
                                            std::to_string(cfg_.max_subdivisions) + " reached, error estimate " +
                                            std::to_string(err));
            auto worst = heap.top();
            heap.pop();
            add(total, *worst, -1.0);
            err -= worst->err;
            const double mid = 0.5 * (worst->lo + worst->hi);
            auto l = make_panel(worst->lo, mid, worst->left);
            auto r = make_panel(mid, worst->hi, worst->right);
            add(total, *l, 1.0);
            add(total, *r, 1.0);
            err += l->err + r->err;
            heap.push(l);
            heap.push(r);
            ++panels;
            if (panels % 256 == 0) {
                // refresh the running error to limit drift
                err = 0.0;
                auto copy = heap;
                while (!copy.empty()) {
                    err += copy.top()->err;
                    copy.pop();
                }
            }
        }
        VectorResult out;
        out.value.assign(dim_, 0.0);
        out.err_est = 0.0;
        while (!heap.empty()) {
            add(out.value, *heap.top(), 1.0);
            out.err_est += heap.top()->err;
            heap.pop();
        }
        out.evaluations = evaluations_;
        return out;
    }

private:
    double tolerance(const Vec& total) const {
        return std::max(cfg_.abs_tol, cfg_.rel_tol * max_abs(total));
    }

    static void add(Vec& total, const Panel& p, double s) {
        axpy(total, p.left, s);
        axpy(total, p.right, s);
    }

    std::shared_ptr<Panel> make_panel(double lo, double hi, const Vec& whole) {
        auto p = std::make_shared<Panel>();
        p->lo = lo;
        p->hi = hi;
        const double mid = 0.5 * (lo + hi);
        p->left = rule_on(lo, mid);
        p->right = rule_on(mid, hi);
        double e = 0.0;
        for (int i = 0; i < dim_; ++i) e = std::max(e, std::abs(p->left[i] + p->right[i] - whole[i]));
        p->err = e;
        return p;
    }

    // Rule applied on [lo, hi] of the unit parameter s in [0, 1].
    Vec rule_on(double lo, double hi) {
        Vec acc(dim_, 0.0);
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
            const double s = c + h * rule_.nodes[i];
            double x, jac;
            map(s, x, jac);
            f_(x, scratch_);
            ++evaluations_;
            for (int d = 0; d < dim_; ++d) {
                const cplx v = scratch_[d];
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw NonFiniteError("integrate_interval: non-finite integrand at x = " + std::to_string(x));
                acc[d] += (rule_.weights[i] * h * jac) * v;
            }
        }
        return acc;
    }

    void map(double s, double& x, double& jac) const {
        const double w = b_ - a_;
        if (cfg_.endpoint_substitution) {
            const double t = std::numbers::pi * s;
            // (1 - cos t)/2 = sin^2(t/2), written to keep relative accuracy near t = 0
            const double st = std::sin(0.5 * t);
            const double ct = std::cos(0.5 * t);
            x = s <= 0.5 ? a_ + w * st * st : b_ - w * ct * ct;
            jac = 0.5 * w * std::numbers::pi * std::sin(t);
        } else {
            x = a_ + w * s;
            jac = w;
        }
    }

    const VectorIntegrand& f_;
    int dim_;
    double a_, b_;
    QuadratureConfig cfg_;
    const GaussLegendreRule& rule_;
    Vec scratch_;
    int evaluations_ = 0;
};

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<GaussLegendreRule>(build_rule(n))).first;
    return *it->second;
}

VectorResult integrate_interval(const VectorIntegrand& f, int dim, double a, double b,
                                const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(a < b)) throw DomainError("integrate_interval: requires a < b");
    if (dim < 1) throw DomainError("integrate_interval: dimension must be positive");
    return Adaptive(f, dim, a, b, cfg).run();
}

Result integrate_interval(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
    VectorIntegrand g = [&f](double x, Vec& out) { out[0] = f(x); };
    auto r = integrate_interval(g, 1, a, b, cfg);
    return {r.value[0], r.err_est, r.evaluations};
}

Result integrate_real_line(const Integrand& f, double decay_rate, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(decay_rate > 0.0)) throw DomainError("integrate_real_line: decay rate must be positive");
    QuadratureConfig inner = cfg;
    inner.endpoint_substitution = false;
    double U = std::max(1.0, 10.0 / decay_rate);
    const auto left = integrate_interval(f, -U, 0.0, inner);
    const auto right = integrate_interval(f, 0.0, U, inner);
    cplx core = left.value + right.value;
    double err = left.err_est + right.err_est;
    int evaluations = left.evaluations + right.evaluations;
    for (int attempt = 0; attempt < 40; ++attempt) {
        // bounds both exp(-rate |u|) and 1/u^2 tails beyond U
        const double tail = (std::abs(f(U)) + std::abs(f(-U))) * std::max(1.0 / decay_rate, U);
        evaluations += 2;
        const double budget = 0.1 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(core));
        if (std::isfinite(tail) && tail <= budget) return {core, err + tail, evaluations};
        // Extend the window to [-2U, 2U] by integrating only the new segments.
        const auto lo = integrate_interval(f, -2.0 * U, -U, inner);
        const auto hi = integrate_interval(f, U, 2.0 * U, inner);
        core += lo.value + hi.value;
        err += lo.err_est + hi.err_est;
        evaluations += lo.evaluations + hi.evaluations;
        U *= 2.0;
    }
    throw TailBoundError("integrate_real_line: tail bound not met up to |u| = " + std::to_string(U));
}

DerivativeResult derivative(const Integrand& f, double x, int order, double h0) {
    if (order < 1 || order > 4) throw DomainError("derivative: order must be 1..4");
    if (!(h0 > 0.0) || h0 < 1e-300 || x + h0 == x) throw StepUnderflowError("derivative: step underflow");
    auto stencil = [&](double h) -> cplx {
        switch (order) {
            case 1: return (f(x + h) - f(x - h)) / (2.0 * h);
            case 2: return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
            case 3: return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h);
            default:
                return (f(x + 2.0 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) /
                       (h * h * h * h);
        }
    };
    constexpr int kTab = 10;
    constexpr double kCon = 1.4, kCon2 = kCon * kCon;
    cplx a[kTab][kTab];
    double h = h0;
    a[0][0] = stencil(h);
    DerivativeResult best{a[0][0], std::numeric_limits<double>::max()};
    for (int i = 1; i < kTab; ++i) {
        h /= kCon;
        if (x + h == x) throw StepUnderflowError("derivative: step underflow");
        a[0][i] = stencil(h);
        double fac = kCon2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= kCon2;
            const double e = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
            if (e <= best.err_est) {
                best.err_est = e;
                best.value = a[j][i];
            }
        }
        if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * best.err_est) break;
    }
    return best;
}

}  // namespace ptsusy::quad
