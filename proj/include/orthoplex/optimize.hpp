#pragma once

#include <functional>

namespace orthoplex {

struct OptimumResult {
    double argmax = 0.0;
    double value = 0.0;
};

/// Golden-section maximization of a unimodal function on [a, b].
OptimumResult golden_max(const std::function<double(double)>& f, double a, double b,
                         double x_tol = 1e-13, int max_iter = 200);

/// Root of a monotone-through-zero function on [a, b] by bisection;
/// requires a sign change on the bracket.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double x_tol = 1e-15, int max_iter = 200);

}  // namespace orthoplex
