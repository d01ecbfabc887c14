#include "orthoplex/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "orthoplex/quadrature.hpp"

namespace orthoplex {

std::vector<double> sample_simplex(int k, double r, RngEngine& rng) {
    if (k < 1) throw std::invalid_argument("sample_simplex: k >= 1 required");
    if (!(r > 0.0)) throw std::invalid_argument("sample_simplex: r > 0 required");
    std::vector<double> x(k);
    if (k == 1) {
        x[0] = r;
        return x;
    }
    double total = 0.0;
    for (double& xi : x) {
        xi = rng.exponential(1.0);
        total += xi;
    }
    const double scale = r / total;
    for (double& xi : x) xi *= scale;
    return x;
}

std::vector<double> sign_count_weights(int n, const ModelPoint& point) {
    if (point.region != Region::Interior)
        throw std::invalid_argument("sign_count_weights: interior point required");
    const PartitionEvaluator pe(n);
    const double M = n * point.m, N = n * point.rho;
    std::vector<double> logw(n - 1);
    double wmax = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= n - 1; ++k) {
        logw[k - 1] = pe.log_sign_count_term(k, M, N);
        wmax = std::max(wmax, logw[k - 1]);
    }
    double total = 0.0;
    std::vector<double> w(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        w[i] = std::exp(logw[i] - wmax);
        total += w[i];
    }
    for (double& wi : w) wi /= total;
    return w;
}

MicrocanonicalSampler::MicrocanonicalSampler(int n, const ModelPoint& point) : n_(n) {
    if (n < 2) throw std::invalid_argument("MicrocanonicalSampler: n >= 2 required");
    if (point.region != Region::Interior)
        throw std::invalid_argument("MicrocanonicalSampler: interior point required");
    pos_sum_ = 0.5 * (point.rho + point.m) * n;
    neg_sum_ = 0.5 * (point.rho - point.m) * n;
    cumulative_ = sign_count_weights(n, point);
    std::partial_sum(cumulative_.begin(), cumulative_.end(), cumulative_.begin());
    cumulative_.back() = 1.0;
}

void MicrocanonicalSampler::sample_into(RngEngine& rng, std::vector<double>& phi) const {
    phi.resize(n_);
    // Inverse CDF over the sign-count distribution with a single uniform.
    const double u = rng.uniform01();
    const int k =
        1 + static_cast<int>(std::lower_bound(cumulative_.begin(), cumulative_.end(), u) -
                             cumulative_.begin());

    // Uniform k-subset of positions by partial Fisher-Yates.
    thread_local std::vector<int> idx;
    idx.resize(n_);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.uniform_below(n_ - i));
        std::swap(idx[i], idx[j]);
    }

    // Positive magnitudes on the first k slots, negated magnitudes elsewhere;
    // exponentials normalized to the exact constraint totals.
    double pos_total = 0.0, neg_total = 0.0;
    for (int i = 0; i < k; ++i) {
        phi[idx[i]] = rng.exponential(1.0);
        pos_total += phi[idx[i]];
    }
    for (int i = k; i < n_; ++i) {
        phi[idx[i]] = rng.exponential(1.0);
        neg_total += phi[idx[i]];
    }
    const double ps = (k == 1) ? 0.0 : pos_sum_ / pos_total;
    const double ns = (n_ - k == 1) ? 0.0 : neg_sum_ / neg_total;
    for (int i = 0; i < k; ++i) phi[idx[i]] = (k == 1) ? pos_sum_ : phi[idx[i]] * ps;
    for (int i = k; i < n_; ++i) phi[idx[i]] = -((n_ - k == 1) ? neg_sum_ : phi[idx[i]] * ns);
}

SpinConfig MicrocanonicalSampler::sample(RngEngine& rng) const {
    SpinConfig config;
    sample_into(rng, config.phi);
    return config;
}

GrandCanonicalSampler::GrandCanonicalSampler(const FieldParams& params, int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("GrandCanonicalSampler: n >= 1 required");
    if (!in_field_domain(params))
        throw std::invalid_argument("GrandCanonicalSampler: mu > |beta| required");
    rate_pos_ = params.mu + params.beta;
    rate_neg_ = params.mu - params.beta;
    p_pos_ = (1.0 / rate_pos_) / single_site_normalizer(params);
}

void GrandCanonicalSampler::sample_into(RngEngine& rng, std::vector<double>& phi) const {
    phi.resize(n_);
    for (double& p : phi) {
        if (rng.uniform01() < p_pos_)
            p = rng.exponential(rate_pos_);
        else
            p = -rng.exponential(rate_neg_);
    }
}

SpinConfig GrandCanonicalSampler::sample(RngEngine& rng) const {
    SpinConfig config;
    sample_into(rng, config.phi);
    return config;
}

SpinConfig sample_microcanonical(int n, const ModelPoint& point, RngEngine& rng) {
    return MicrocanonicalSampler(n, point).sample(rng);
}

SpinConfig sample_grand_canonical(const FieldParams& params, int n, RngEngine& rng) {
    return GrandCanonicalSampler(params, n).sample(rng);
}

namespace {

constexpr int kChunkCount = 64;

struct ChunkMoments {
    std::vector<long double> sum;
    std::vector<long double> sum_sq;
    long count = 0;
};

template <typename Sampler>
void run_chunk(const Sampler& sampler, std::span<const Observable> suite, long n_draws,
               RngState state, ChunkMoments& out) {
    RngEngine rng(state);
    std::vector<double> phi;
    out.sum.assign(suite.size(), 0.0L);
    out.sum_sq.assign(suite.size(), 0.0L);
    out.count = n_draws;
    for (long s = 0; s < n_draws; ++s) {
        sampler.sample_into(rng, phi);
        for (size_t i = 0; i < suite.size(); ++i) {
            const double v =
                suite[i].eval(std::span<const double>(phi.data(), suite[i].arity));
            out.sum[i] += v;
            out.sum_sq[i] += static_cast<long double>(v) * v;
        }
    }
}

template <typename Sampler>
std::vector<Estimate> estimate_impl(const Sampler& sampler, int n,
                                    std::span<const Observable> suite, long n_samples,
                                    RngState rng, int threads) {
    if (n_samples < 2) throw std::invalid_argument("estimate_observables: n_samples >= 2 required");
    for (const auto& obs : suite) {
        if (obs.arity < 1 || obs.arity > n)
            throw std::invalid_argument("estimate_observables: observable arity exceeds n");
        if (!obs.eval) throw std::invalid_argument("estimate_observables: missing eval");
    }

    std::vector<ChunkMoments> chunks(kChunkCount);
    std::vector<long> draws(kChunkCount, n_samples / kChunkCount);
    for (long c = 0; c < n_samples % kChunkCount; ++c) ++draws[c];

    threads = std::max(1, threads);
    std::atomic<int> next_chunk{0};
    auto worker = [&]() {
        for (;;) {
            const int c = next_chunk.fetch_add(1);
            if (c >= kChunkCount) return;
            run_chunk(sampler, suite, draws[c],
                      RngState{rng.seed, rng.stream + static_cast<std::uint64_t>(c)}, chunks[c]);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<Estimate> estimates(suite.size());
    for (size_t i = 0; i < suite.size(); ++i) {
        long double sum = 0.0L, sum_sq = 0.0L;
        long count = 0;
        for (const auto& chunk : chunks) {  // fixed merge order
            sum += chunk.sum[i];
            sum_sq += chunk.sum_sq[i];
            count += chunk.count;
        }
        const long double mean = sum / count;
        const long double var = std::max(0.0L, (sum_sq - count * mean * mean) / (count - 1));
        estimates[i] = {static_cast<double>(mean),
                        static_cast<double>(sqrtl(var / count)), count};
    }
    return estimates;
}

}  // namespace

std::vector<Estimate> estimate_observables(const SamplerSpec& spec,
                                           std::span<const Observable> suite, long n_samples,
                                           RngState rng, int threads) {
    if (const auto* micro = std::get_if<MicroSpec>(&spec)) {
        MicrocanonicalSampler sampler(micro->n, micro->point);
        return estimate_impl(sampler, micro->n, suite, n_samples, rng, threads);
    }
    const auto& grand = std::get<GrandSpec>(spec);
    GrandCanonicalSampler sampler(grand.params, grand.n);
    return estimate_impl(sampler, grand.n, suite, n_samples, rng, threads);
}

Estimate estimate_observable(const SamplerSpec& spec, const Observable& obs, long n_samples,
                             RngState rng, int threads) {
    return estimate_observables(spec, std::span<const Observable>(&obs, 1), n_samples, rng,
                                threads)[0];
}

}  // namespace orthoplex
