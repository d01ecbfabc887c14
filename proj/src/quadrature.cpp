#include "orthoplex/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace orthoplex {

namespace {

QuadratureRule make_gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        // Recompute the centre weight at x = 0 exactly.
        double p0 = 1.0, p1 = 0.0;
        for (int k = 2; k <= n; ++k) {
            const double p2 = (-(k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double pp = n * (0.0 * p1 - p0) / (0.0 - 1.0);
        rule.nodes[n / 2] = 0.0;
        rule.weights[n / 2] = 2.0 / (pp * pp);
    }
    return rule;
}

QuadratureRule make_gauss_laguerre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre: order must be positive");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    double x = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            x = 3.0 / (1.0 + 2.4 * n);
        } else if (i == 1) {
            x += 15.0 / (1.0 + 2.5 * n);
        } else {
            const double ai = i - 1;
            x += (1.0 + 2.55 * ai) / (1.9 * ai) * (x - rule.nodes[i - 2]);
        }
        double pp = 0.0, pnm1 = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0 - x) * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (p1 - p2) / x;
            pnm1 = p2;
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-14 * std::max(1.0, std::abs(x))) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = -1.0 / (pp * n * pnm1);
    }
    return rule;
}

const QuadratureRule& cached_rule(int order, bool laguerre) {
    static std::map<std::pair<int, bool>, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.try_emplace({order, laguerre});
    if (inserted) it->second = laguerre ? make_gauss_laguerre(order) : make_gauss_legendre(order);
    return it->second;
}

double panel_gl(const std::function<double(double)>& f, double a, double b, int order) {
    const QuadratureRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    long double acc = 0.0L;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        acc += static_cast<long double>(rule.weights[i]) * f(mid + hw * rule.nodes[i]);
    return static_cast<double>(acc * hw);
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b, double abs_tol,
                    double rel_tol, int depth, double whole) {
    const double mid = 0.5 * (a + b);
    const double left = panel_gl(f, a, mid, 16);
    const double right = panel_gl(f, mid, b, 16);
    const double sum = left + right;
    const double err = std::abs(sum - whole);
    if (depth <= 0 || err < abs_tol || err < rel_tol * std::abs(sum)) return sum;
    return adaptive_rec(f, a, mid, 0.5 * abs_tol, rel_tol, depth - 1, left) +
           adaptive_rec(f, mid, b, 0.5 * abs_tol, rel_tol, depth - 1, right);
}

// log of sum_i w_i exp(L_i) for one Gauss-Legendre panel.
double panel_log_gl(const std::function<double(double)>& log_f, double a, double b, int order) {
    const QuadratureRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    std::vector<double> vals(rule.nodes.size());
    double vmax = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        vals[i] = log_f(mid + hw * rule.nodes[i]);
        vmax = std::max(vmax, vals[i]);
    }
    if (!std::isfinite(vmax)) return -std::numeric_limits<double>::infinity();
    long double acc = 0.0L;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        acc += static_cast<long double>(rule.weights[i]) * std::exp(vals[i] - vmax);
    return vmax + std::log(static_cast<double>(acc)) + std::log(hw);
}

struct LogPanelStack {
    const std::function<double(double)>& log_f;
    double log_tol;
    double total = -std::numeric_limits<double>::infinity();

    void add(double a, double b, int depth) {
        const double coarse = panel_log_gl(log_f, a, b, 16);
        const double fine = panel_log_gl(log_f, a, b, 32);
        const bool negligible = fine < total - 46.0;  // < 1e-20 of running total
        if (depth <= 0 || negligible || std::abs(fine - coarse) < log_tol) {
            total = log_add(total, fine);
            return;
        }
        const double mid = 0.5 * (a + b);
        add(a, mid, depth - 1);
        add(mid, b, depth - 1);
    }
};

}  // namespace

const QuadratureRule& gauss_legendre(int order) { return cached_rule(order, false); }
const QuadratureRule& gauss_laguerre(int order) { return cached_rule(order, true); }

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol, int max_depth) {
    const double whole = panel_gl(f, a, b, 16);
    return adaptive_rec(f, a, b, abs_tol, rel_tol, max_depth, whole);
}

double log_integrate_adaptive(const std::function<double(double)>& log_f, double a, double b,
                              std::span<const double> breakpoints, double log_tol, int max_depth) {
    if (!(a < b)) throw std::invalid_argument("log_integrate_adaptive: empty interval");
    std::vector<double> edges{a, b};
    for (double p : breakpoints)
        if (p > a && p < b) edges.push_back(p);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    LogPanelStack stack{log_f, log_tol};
    for (size_t i = 0; i + 1 < edges.size(); ++i) stack.add(edges[i], edges[i + 1], max_depth);
    return stack.total;
}

double log_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

double powi(double x, long n) {
    double result = 1.0, base = x;
    for (long e = n; e > 0; e >>= 1) {
        if (e & 1) result *= base;
        base *= base;
    }
    return result;
}

}  // namespace orthoplex
