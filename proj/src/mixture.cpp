#include "orthoplex/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "orthoplex/quadrature.hpp"

namespace orthoplex {

FiniteMixture::FiniteMixture(const Interaction& g, int n, double log_tol)
    : g_(g), n_(n), log_tol_(log_tol) {
    if (n < 2) throw std::invalid_argument("FiniteMixture: n >= 2 required");
    pe_ = std::make_shared<const PartitionEvaluator>(n);

    // Panel edges at the tilting maximizers keep the adaptive pass cheap.
    try {
        const double halfwidth = 3.0 / std::sqrt(static_cast<double>(n));
        for (double m : find_global_maxima(g_)) {
            breakpoints_.push_back(m);
            breakpoints_.push_back(m - halfwidth);
            breakpoints_.push_back(m + halfwidth);
        }
    } catch (const std::exception&) {
        breakpoints_.clear();  // fall back to plain adaptive subdivision
    }

    const double log_n = std::log(static_cast<double>(n));
    log_atom_pos_ = log_n + n * g_(1.0) + pe_->log_boundary(n);
    log_atom_neg_ = log_n + n * g_(-1.0) + pe_->log_boundary(n);
    log_q_ = log_add(log_interior(-1.0, 1.0), log_add(log_atom_pos_, log_atom_neg_));
}

double FiniteMixture::log_interior(double a, double b) const {
    auto log_density = [this](double m) {
        return std::log(static_cast<double>(n_)) + n_ * g_(m) +
               pe_->log_interior(n_ * m, n_);
    };
    return log_integrate_adaptive(log_density, a, b, breakpoints_, log_tol_);
}

double FiniteMixture::log_mass(double a, double b) const {
    if (!(a <= b)) throw std::invalid_argument("FiniteMixture::log_mass: a <= b required");
    const double lo = std::max(a, -1.0), hi = std::min(b, 1.0);
    double acc = -std::numeric_limits<double>::infinity();
    if (lo < hi) acc = log_interior(lo, hi);
    if (a <= -1.0 && b >= -1.0) acc = log_add(acc, log_atom_neg_);
    if (a <= 1.0 && b >= 1.0) acc = log_add(acc, log_atom_pos_);
    return acc - log_q_;
}

namespace {

struct AxisNodes {
    std::vector<double> phi;
    std::vector<double> weight;
};

AxisNodes axis_nodes(const FieldParams& params, int order) {
    const QuadratureRule& rule = gauss_laguerre(order);
    const double q = single_site_normalizer(params);
    const double rp = params.mu + params.beta;
    const double rn = params.mu - params.beta;
    AxisNodes axis;
    axis.phi.reserve(2 * rule.nodes.size());
    axis.weight.reserve(2 * rule.nodes.size());
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        axis.phi.push_back(-rule.nodes[i] / rn);
        axis.weight.push_back(rule.weights[i] / (rn * q));
    }
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        axis.phi.push_back(rule.nodes[i] / rp);
        axis.weight.push_back(rule.weights[i] / (rp * q));
    }
    return axis;
}

double tensor_expectation(const AxisNodes& axis, const Observable& obs) {
    const int arity = obs.arity;
    std::vector<double> point(arity, 0.0);
    std::vector<size_t> index(arity, 0);
    const size_t width = axis.phi.size();
    long double acc = 0.0L;
    for (;;) {
        long double w = 1.0L;
        for (int d = 0; d < arity; ++d) {
            point[d] = axis.phi[index[d]];
            w *= axis.weight[index[d]];
        }
        acc += w * obs.eval(std::span<const double>(point.data(), arity));
        int d = 0;
        for (; d < arity; ++d) {
            if (++index[d] < width) break;
            index[d] = 0;
        }
        if (d == arity) break;
    }
    return static_cast<double>(acc);
}

}  // namespace

double grand_canonical_expectation(const FieldParams& params, const Observable& obs) {
    if (obs.arity < 1 || obs.arity > 4)
        throw std::invalid_argument("grand_canonical_expectation: arity must be in [1, 4]");
    if (!obs.eval) throw std::invalid_argument("grand_canonical_expectation: missing eval");
    const int order = obs.arity <= 2 ? 48 : 24;
    return tensor_expectation(axis_nodes(params, order), obs);
}

double limit_state_expectation(const MixtureState& mix, const Observable& obs) {
    if (mix.components.empty())
        throw std::invalid_argument("limit_state_expectation: empty mixture");
    double acc = 0.0;
    for (const auto& comp : mix.components)
        acc += comp.weight * grand_canonical_expectation(comp.params, obs);
    return acc;
}

}  // namespace orthoplex
