#pragma once

#include <functional>
#include <span>
#include <vector>

namespace orthoplex {

struct QuadratureRule {
    std::vector<double> nodes;    // on the canonical interval
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1].  Rules are cached per order; thread safe.
const QuadratureRule& gauss_legendre(int order);

/// Gauss-Laguerre rule for weight e^{-x} on [0, inf).  Cached; thread safe.
const QuadratureRule& gauss_laguerre(int order);

/// Adaptive integral of f over [a, b] by bisection with embedded
/// Gauss-Legendre error estimates.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, double rel_tol = 1e-12,
                          int max_depth = 40);

/// log of the integral of exp(log_f) over [a, b], evaluated entirely in the
/// log domain so the integrand may reach exp(1e5) scales.  `breakpoints`
/// forces initial panel edges (peak locations).  Panels whose contribution is
/// negligible relative to the running total are pruned.
double log_integrate_adaptive(const std::function<double(double)>& log_f, double a, double b,
                              std::span<const double> breakpoints = {},
                              double log_tol = 1e-11, int max_depth = 48);

/// Numerically stable log(exp(a) + exp(b)).
double log_add(double a, double b);

/// x^n by squaring for non-negative integer exponents.
double powi(double x, long n);

}  // namespace orthoplex
