#include "orthoplex/thermo.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "orthoplex/optimize.hpp"
#include "orthoplex/rng.hpp"
#include "orthoplex/taylor_series.hpp"

namespace orthoplex {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool in_field_domain(const FieldParams& params) {
    return params.mu > std::abs(params.beta);
}

double single_site_normalizer(const FieldParams& params) {
    if (!in_field_domain(params))
        throw std::invalid_argument("single_site_normalizer: mu > |beta| required");
    return 1.0 / (params.mu + params.beta) + 1.0 / (params.mu - params.beta);
}

double grand_entropy(double beta, double mu) {
    if (!(mu > std::abs(beta))) return kInf;
    return std::log(1.0 / (mu + beta) + 1.0 / (mu - beta));
}

double limiting_entropy(const ModelPoint& point) {
    if (point.region != Region::Interior)
        throw std::invalid_argument("limiting_entropy: interior point required");
    const double a = std::sqrt((point.rho + point.m) / 2.0);
    const double b = std::sqrt((point.rho - point.m) / 2.0);
    return 1.0 + std::log((a + b) * (a + b));
}

double limiting_entropy_slice(double m) {
    if (std::abs(m) > 1.0) throw std::invalid_argument("limiting_entropy_slice: |m| <= 1 required");
    if (std::abs(m) == 1.0) return 1.0;
    return 1.0 + std::log(1.0 + std::sqrt((1.0 - m) * (1.0 + m)));
}

FieldParams ensemble_map(const ModelPoint& point) {
    if (point.region != Region::Interior)
        throw std::invalid_argument("ensemble_map: interior point required");
    const double m = point.m, rho = point.rho;
    const double root = std::sqrt(rho * rho - m * m);
    const double mu = 1.0 / root;
    double beta;
    if (std::abs(m) <= 1e-4 * rho) {
        // 1 - rho/root cancels catastrophically near m = 0; two series terms
        // leave a relative error below (m/rho)^4.
        const double u = (m / rho) * (m / rho);
        beta = -(m / (2.0 * rho * rho)) * (1.0 + 0.75 * u);
    } else {
        beta = (1.0 - rho / root) / m;
    }
    return {beta, mu};
}

ModelPoint inverse_map(const FieldParams& params) {
    if (!in_field_domain(params)) throw std::invalid_argument("inverse_map: mu > |beta| required");
    const double b = params.beta, u = params.mu;
    const double disc = u * u - b * b;
    const double m = -2.0 * b / disc;
    const double rho = (u * u + b * b) / (u * disc);
    return interior_point(m, rho);
}

namespace {

// One coordinate-descent run for beta m + mu rho + f(beta, mu).
double descend(double m, double rho, double beta, double mu, bool& converged) {
    auto objective = [&](double b, double u) { return b * m + u * rho + grand_entropy(b, u); };
    double value = objective(beta, mu);
    converged = false;
    for (int it = 0; it < 200; ++it) {
        // Minimize in beta on (-mu, mu).
        const double margin = 1e-12 * mu;
        auto fb = [&](double b) { return objective(b, mu); };
        auto rb = golden_max([&](double b) { return -fb(b); }, -mu + margin, mu - margin, 1e-14);
        beta = rb.argmax;

        // Minimize in mu on (|beta|, inf); expand the bracket until ascent.
        auto fu = [&](double u) { return objective(beta, u); };
        double lo = std::abs(beta) + 1e-12 * std::max(1.0, std::abs(beta));
        double hi = std::max(2.0 * std::abs(beta) + 1.0, 2.0 * mu);
        while (fu(hi * 2.0) < fu(hi) && hi < 1e12) hi *= 2.0;
        auto ru = golden_max([&](double u) { return -fu(u); }, lo, hi * 2.0, 1e-14);
        mu = ru.argmax;

        const double next = objective(beta, mu);
        if (!std::isfinite(next)) return kInf;
        if (std::abs(value - next) < 1e-13 * std::max(1.0, std::abs(next))) {
            converged = true;
            return next;
        }
        value = next;
    }
    return value;
}

}  // namespace

double legendre_inf_numeric(const ModelPoint& point) {
    if (point.region != Region::Interior)
        throw std::invalid_argument("legendre_inf_numeric: interior point required");
    const FieldParams seed = ensemble_map(point);

    bool ok1 = false, ok2 = false;
    const double v1 = descend(point.m, point.rho, seed.beta, seed.mu, ok1);

    // Deterministic pseudo-random restart derived from the inputs.
    RngEngine rng(RngState{0x6f72746870ULL, std::bit_cast<std::uint64_t>(point.m) ^
                                                std::bit_cast<std::uint64_t>(point.rho)});
    const double mu0 = (0.25 + 3.75 * rng.uniform01()) / point.rho;
    const double v2 = descend(point.m, point.rho, 0.0, mu0, ok2);

    if (!ok1 && !ok2)
        throw std::runtime_error("legendre_inf_numeric: coordinate descent did not converge");
    const double best = std::min(ok1 ? v1 : kInf, ok2 ? v2 : kInf);
    if (ok1 && ok2 && std::abs(v1 - v2) > 1e-6)
        throw std::runtime_error("legendre_inf_numeric: restarts disagree beyond tolerance");
    return best;
}

HalfConstrainedResult half_constrained_entropy(double beta) {
    auto objective = [&](double m) { return limiting_entropy_slice(m) - beta * m; };
    auto r = golden_max(objective, -1.0, 1.0, 1e-14);
    // Newton polish on the stationarity condition when the maximizer is
    // strictly interior; s'' < 0 everywhere so Newton is safe.
    double m = r.argmax;
    if (std::abs(m) < 1.0 - 1e-9) {
        for (int it = 0; it < 60; ++it) {
            const auto d = entropy_slice_derivatives(m, 2);
            const double step = (d[1] - beta) / d[2];
            const double next = m - step;
            if (!(next > -1.0 && next < 1.0)) break;
            m = next;
            if (std::abs(step) < 1e-15) break;
        }
    }
    return {objective(m), m};
}

}  // namespace orthoplex
