#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "orthoplex/core_model.hpp"
#include "orthoplex/rng.hpp"
#include "orthoplex/thermo.hpp"

namespace orthoplex {

/// A spin configuration phi in R^n.
struct SpinConfig {
    std::vector<double> phi;
};

/// A bounded local observable acting on the leading `arity` coordinates
/// (any index set is equivalent by label permutation invariance).
struct Observable {
    int arity = 1;
    double sup_bound = 1.0;
    std::function<double(std::span<const double>)> eval;
};

/// Uniform sample from the (k-1)-dimensional simplex scaled to sum r,
/// realized as k iid standard exponentials normalized to total r.
std::vector<double> sample_simplex(int k, double r, RngEngine& rng);

/// Probability of each positive-sign count k in {1, .., n-1} under the
/// microcanonical measure; computed in the log domain, sums to 1.
std::vector<double> sign_count_weights(int n, const ModelPoint& point);

/// Draws from nu_n(m, rho): sign count k from its weight vector, a uniform
/// k-subset of positions, and two independent simplex draws for the positive
/// and negative magnitudes.
class MicrocanonicalSampler {
public:
    MicrocanonicalSampler(int n, const ModelPoint& point);

    int size() const { return n_; }
    void sample_into(RngEngine& rng, std::vector<double>& phi) const;
    SpinConfig sample(RngEngine& rng) const;

private:
    int n_;
    double pos_sum_, neg_sum_;        // X_n = (rho+m) n / 2, Y_n = (rho-m) n / 2
    std::vector<double> cumulative_;  // CDF over k = 1..n-1
};

/// Draws iid coordinates from eta(beta, mu): a +Exponential(mu+beta) branch
/// with probability (1/(mu+beta))/q, else -Exponential(mu-beta).
class GrandCanonicalSampler {
public:
    GrandCanonicalSampler(const FieldParams& params, int n);

    int size() const { return n_; }
    void sample_into(RngEngine& rng, std::vector<double>& phi) const;
    SpinConfig sample(RngEngine& rng) const;

private:
    int n_;
    double rate_pos_, rate_neg_, p_pos_;
};

SpinConfig sample_microcanonical(int n, const ModelPoint& point, RngEngine& rng);
SpinConfig sample_grand_canonical(const FieldParams& params, int n, RngEngine& rng);

/// Which measure to draw from when estimating observables.
struct MicroSpec {
    int n;
    ModelPoint point;
};
struct GrandSpec {
    FieldParams params;
    int n;
};
using SamplerSpec = std::variant<MicroSpec, GrandSpec>;

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
};

/// Monte Carlo means with standard errors for a suite of observables over a
/// shared sample stream.  Work is split into a fixed number of chunks with
/// derived streams (stream = base stream + chunk index) and merged in chunk
/// order, so results depend only on (seed, stream), never on thread count.
std::vector<Estimate> estimate_observables(const SamplerSpec& spec,
                                           std::span<const Observable> suite, long n_samples,
                                           RngState rng, int threads = 1);

Estimate estimate_observable(const SamplerSpec& spec, const Observable& obs, long n_samples,
                             RngState rng, int threads = 1);

}  // namespace orthoplex
