#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace test_stats {

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
inline double ks_survival(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double acc = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        acc += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * acc, 0.0, 1.0);
}

/// One-sample KS p-value of `samples` against a CDF.
inline double ks_test_cdf(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - i / n));
        d = std::max(d, std::abs((i + 1) / n - f));
    }
    return ks_survival((std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d);
}

/// Two-sample KS p-value.
inline double ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    const double ne = static_cast<double>(a.size()) * b.size() / (a.size() + b.size());
    const double sq = std::sqrt(ne);
    return ks_survival((sq + 0.12 + 0.11 / sq) * d);
}

/// Richardson-extrapolated central difference (test-side oracle, independent
/// of the library's derivative paths).
inline double fd_derivative(const std::function<double(double)>& f, double x, int order,
                            double h) {
    auto stencil = [&](double step) {
        double acc = 0.0;
        double binom = 1.0;
        for (int i = 0; i <= order; ++i) {
            acc += ((i % 2 == 0) ? 1.0 : -1.0) * binom * f(x + (order / 2.0 - i) * step);
            binom = binom * (order - i) / (i + 1.0);
        }
        return acc / std::pow(step, order);
    };
    return (4.0 * stencil(0.5 * h) - stencil(h)) / 3.0;
}

}  // namespace test_stats
