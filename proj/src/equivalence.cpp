#include "orthoplex/equivalence.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace orthoplex {

double relative_entropy_rate(int n, const ModelPoint& point, const FieldParams& params) {
    if (n < 3) throw std::invalid_argument("relative_entropy_rate: n >= 3 required");
    if (point.region != Region::Interior)
        throw std::invalid_argument("relative_entropy_rate: interior point required");
    if (!in_field_domain(params))
        throw std::invalid_argument("relative_entropy_rate: mu > |beta| required");
    const double s_n = entropy_n(n, point);
    return params.beta * point.m + params.mu * point.rho + grand_entropy(params) -
           (static_cast<double>(n) / (n - 2)) * s_n;
}

double pinsker_bound(int n, int index_size, const ModelPoint& point, const FieldParams& params) {
    if (index_size < 1 || index_size >= n - 2)
        throw std::invalid_argument("pinsker_bound: 1 <= |I| < n-2 required");
    const double rate = relative_entropy_rate(n, point, params);
    double radicand =
        static_cast<double>(index_size) * (n - 2) / (2.0 * (n - 2 - index_size)) * rate;
    if (radicand < 0.0) {
        if (radicand < -1e-12)
            throw std::runtime_error("pinsker_bound: radicand is negative beyond rounding");
        radicand = 0.0;
    }
    return std::sqrt(radicand);
}

EquivalenceReport verify_gap(int n, const ModelPoint& point, std::span<const Observable> suite,
                             long n_samples, RngState rng, int threads) {
    for (const auto& obs : suite)
        if (!(obs.sup_bound <= 1.0))
            throw std::invalid_argument("verify_gap: observables must be bounded by 1");

    const FieldParams matched = ensemble_map(point);
    const auto micro = estimate_observables(MicroSpec{n, point}, suite, n_samples, rng, threads);
    const auto grand = estimate_observables(
        GrandSpec{matched, n}, suite, n_samples,
        RngState{rng.seed, rng.stream + 0x10000ULL}, threads);

    EquivalenceReport report;
    report.observable_count = static_cast<int>(suite.size());
    report.n = n;
    double gap_sum = 0.0;
    for (size_t i = 0; i < suite.size(); ++i) {
        const double bound = pinsker_bound(n, suite[i].arity, point, matched);
        const double gap = std::abs(micro[i].mean - grand[i].mean);
        const double se = std::hypot(micro[i].std_error, grand[i].std_error);
        report.bound = std::max(report.bound, bound);
        report.empirical_gap = std::max(report.empirical_gap, gap);
        gap_sum += gap;
        if (gap > bound + 4.0 * se) {
            std::ostringstream os;
            os << "verify_gap: observable " << i << " gap " << gap << " exceeds bound " << bound
               << " + 4 * " << se;
            throw std::runtime_error(os.str());
        }
    }
    report.mean_gap = suite.empty() ? 0.0 : gap_sum / static_cast<double>(suite.size());
    return report;
}

}  // namespace orthoplex
