#pragma once

#include <cmath>
#include <cstdint>

namespace orthoplex {

/// Seed/stream pair identifying a reproducible random stream.  Identical
/// (seed, stream) values reproduce identical draws on every run.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// xoshiro256++ generator with splitmix64 state expansion.  Self-contained so
/// that sequences are identical across platforms and standard libraries.
class RngEngine {
public:
    explicit RngEngine(RngState state) {
        std::uint64_t x = state.seed ^ (0x9e3779b97f4a7c15ULL * (state.stream + 1));
        bool any = false;
        for (auto& si : s_) {
            si = splitmix64(x);
            any = any || (si != 0);
        }
        if (!any) s_[0] = 0x9e3779b97f4a7c15ULL;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 bits of precision.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exponential with the given rate, via inverse CDF.
    double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

    /// Uniform integer in [0, bound), bound >= 1, by rejection.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
};

}  // namespace orthoplex
