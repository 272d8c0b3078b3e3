#pragma once

#include <cstdint>
#include <vector>

namespace acrab {

inline uint64_t splitmix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based generator: output k is a pure function of (seed, stream, k),
/// so distinct (seed, stream) pairs give independent, reproducible streams and
/// parallel cells can each own a stream without sharing state.
class CounterRng {
public:
    explicit CounterRng(uint64_t seed, uint64_t stream = 0)
        : key_(splitmix64(splitmix64(seed) ^ (stream * 0xD2B74407B1CE6E93ull + 0x9E3779B97F4A7C15ull))) {}

    uint64_t next_u64() {
        uint64_t z = key_ + (++counter_) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bernoulli(double p) { return next_double() < p; }

    /// Index into a cumulative distribution (cdf.back() == 1 up to rounding).
    int next_from_cdf(const std::vector<double>& cdf) {
        const double u = next_double();
        int lo = 0, hi = static_cast<int>(cdf.size()) - 1;
        while (lo < hi) {
            const int mid = (lo + hi) / 2;
            if (u < cdf[static_cast<size_t>(mid)]) hi = mid; else lo = mid + 1;
        }
        return lo;
    }

    // UniformRandomBitGenerator interface.
    using result_type = uint64_t;
    static constexpr uint64_t min() { return 0; }
    static constexpr uint64_t max() { return ~0ull; }
    uint64_t operator()() { return next_u64(); }

private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace acrab
