#pragma once

#include <span>

#include "orthoplex/core_model.hpp"
#include "orthoplex/sampling.hpp"
#include "orthoplex/thermo.hpp"

namespace orthoplex {

/// Relative entropy per site of the (n-2)-coordinate microcanonical marginal
/// against the grand-canonical product state:
///   H_{n-2}/(n-2) = beta m + mu rho + f(beta, mu) - n/(n-2) s_n(m, rho).
/// Nonnegative for every admissible input.
double relative_entropy_rate(int n, const ModelPoint& point, const FieldParams& params);

/// Pinsker-type bound on expectation gaps over observables with sup norm 1 on
/// |I| = index_size coordinates:
///   sqrt( |I|(n-2) / (2(n-2-|I|)) * relative_entropy_rate ).
/// Radicands in [-1e-12, 0) are clamped to zero.
double pinsker_bound(int n, int index_size, const ModelPoint& point, const FieldParams& params);

struct EquivalenceReport {
    double bound = 0.0;          // largest Pinsker bound over the suite
    double empirical_gap = 0.0;  // largest Monte Carlo gap over the suite
    double mean_gap = 0.0;
    int observable_count = 0;
    int n = 0;
};

/// Estimates |nu_n[f] - eta[f]| by Monte Carlo for every observable at the
/// matched parameters ensemble_map(point), and checks each gap against its
/// Pinsker bound plus four combined standard errors.  Throws
/// std::runtime_error on any violation.  Observables must have sup norm <= 1.
EquivalenceReport verify_gap(int n, const ModelPoint& point, std::span<const Observable> suite,
                             long n_samples, RngState rng, int threads = 1);

}  // namespace orthoplex
