#include "orthoplex/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "orthoplex/quadrature.hpp"

namespace orthoplex {

double angular_entropy(double m, double rho, double theta1, double theta2) {
    if (!(rho > 0.0) || std::abs(m) >= rho)
        throw std::invalid_argument("angular_entropy: interior (m, rho) required");
    const double a = std::sqrt((rho + m) / 2.0);
    const double b = std::sqrt((rho - m) / 2.0);
    const double c = a * std::cos(theta1) + b * std::cos(theta2);
    return 1.0 + std::log(c * c);
}

double angular_psi(const Interaction& g, double m, double theta1, double theta2) {
    return g(m) + angular_entropy(m, 1.0, theta1, theta2);
}

namespace {

// Dyadic panel edges on [0, pi] refined toward 0, where the integrand peaks
// with width ~ 1/sqrt(n).
std::vector<double> dyadic_edges(int n) {
    const double target = 0.5 / std::sqrt(static_cast<double>(n));
    std::vector<double> edges{std::numbers::pi};
    double e = std::numbers::pi / 2.0;
    while (e > target) {
        edges.push_back(e);
        e /= 2.0;
    }
    edges.push_back(e);
    edges.push_back(0.0);
    std::reverse(edges.begin(), edges.end());
    return edges;
}

}  // namespace

LogReal log_partition_bessel(int n, const ModelPoint& point) {
    if (n < 2) throw std::invalid_argument("log_partition_bessel: n >= 2 required");
    if (point.region != Region::Interior)
        throw std::invalid_argument("log_partition_bessel: interior point required");
    const double m = point.m, rho = point.rho;
    const double A = std::sqrt((rho + m) / 2.0);
    const double B = std::sqrt((rho - m) / 2.0);
    const double u = A + B;

    // Shifted integrand: cos th1 cos th2 * tau^{2n-2} with
    // tau = (A cos th1 + B cos th2) / (A + B) in [-1, 1].
    const auto edges = dyadic_edges(n);
    const QuadratureRule& rule = gauss_legendre(64);
    std::vector<double> nodes, weights, cosines;
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        const double mid = 0.5 * (edges[p] + edges[p + 1]);
        const double hw = 0.5 * (edges[p + 1] - edges[p]);
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            nodes.push_back(mid + hw * rule.nodes[i]);
            weights.push_back(hw * rule.weights[i]);
        }
    }
    cosines.resize(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) cosines[i] = std::cos(nodes[i]);

    const double ra = A / u, rb = B / u;
    long double acc = 0.0L;
    for (size_t i = 0; i < nodes.size(); ++i) {
        const double ci = cosines[i];
        long double row = 0.0L;
        for (size_t j = 0; j < nodes.size(); ++j) {
            const double cj = cosines[j];
            const double tau = ra * ci + rb * cj;
            row += static_cast<long double>(weights[j]) * cj * powi(tau * tau, n - 1);
        }
        acc += static_cast<long double>(weights[i]) * ci * row;
    }
    if (!(acc > 0.0L))
        throw std::runtime_error("log_partition_bessel: quadrature returned a non-positive value");

    const double log_integral = static_cast<double>(logl(acc)) + (2.0 * n - 2.0) * std::log(u);
    const double log_prefactor = (2.0 * n - 1.0) * std::numbers::ln2 +
                                 (n - 2.0) * std::log(static_cast<double>(n)) +
                                 std::lgamma(n + 1.0) + std::log(n * (2.0 * n - 1.0)) -
                                 std::lgamma(2.0 * n + 1.0) - 0.5 * std::log(rho * rho - m * m) -
                                 2.0 * std::log(std::numbers::pi);
    return {log_prefactor + log_integral};
}

LogReal laplace_log_prefactor(int n, int k) {
    if (n < 2) throw std::invalid_argument("laplace_log_prefactor: n >= 2 required");
    if (k < 1) throw std::invalid_argument("laplace_log_prefactor: k >= 1 required");
    // 2 n^{1/(2k)+1} (2n)! pi^2 / (2^{2n-1} n^{n-2} n! C(2n,2) e^{-(n-1)}).
    // The leading 2 compensates the [0, pi]^2 angular domain: the integrand
    // peaks at the corners (0,0) and (pi,pi), each holding a quarter of the
    // full Gaussian mass that the closed-form weight integrates over R^2.
    const double ln_n = std::log(static_cast<double>(n));
    return {(1.0 / (2.0 * k) + 1.0) * ln_n + std::lgamma(2.0 * n + 1.0) +
            2.0 * std::log(std::numbers::pi) - (2.0 * n - 2.0) * std::numbers::ln2 -
            (n - 2.0) * ln_n - std::lgamma(n + 1.0) - std::log(n * (2.0 * n - 1.0)) +
            (n - 1.0)};
}

double laplace_weight_numeric(const Interaction& g, double m_star, double delta, int n) {
    if (!(delta > 0.0)) throw std::invalid_argument("laplace_weight_numeric: delta > 0 required");
    const double lo = m_star - delta, hi = m_star + delta;
    if (!(lo > -1.0 && hi < 1.0))
        throw std::invalid_argument("laplace_weight_numeric: window must stay inside (-1, 1)");

    const auto maxima = find_global_maxima(g);
    int inside = 0;
    for (double m : maxima)
        if (m > lo && m < hi) ++inside;
    if (inside != 1)
        throw std::invalid_argument(
            "laplace_weight_numeric: window must contain exactly one global maximizer");

    const auto type = classify_type(g, m_star);
    const PartitionEvaluator pe(n);
    auto log_f = [&](double m) {
        return n * (g(m) + pe.log_interior(n * m, n) / n);
    };
    const double breakpoints[] = {m_star};
    const double log_integral = log_integrate_adaptive(log_f, lo, hi, breakpoints);
    const double log_w = log_integral - n * psi(g, m_star) +
                         laplace_log_prefactor(n, type.k).log_value;
    return std::exp(log_w);
}

}  // namespace orthoplex
