#pragma once

#include <cstdint>

#include "pseudorank/special_functions.hpp"

namespace pseudorank {

/// Counter-based pseudo-random stream (SplitMix64 output function over a
/// keyed counter). A stream is fully determined by (seed, stream_index), so
/// per-replication substreams can be drawn in parallel without any ordering
/// effects; the n-th variate of a stream is a pure function of
/// (seed, stream_index, n).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index)
        : key_(mix(mix(seed) ^ mix(stream_index + 0x632BE59BD9B4E019ULL))), counter_(0)
    {
    }

    std::uint64_t next_u64()
    {
        return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform on the open interval (0,1): 53 random bits offset by half an ulp.
    double next_unit()
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Normal variate by inverse cdf; one uniform consumed per draw.
    double next_normal(double mu, double sigma)
    {
        return mu + sigma * normal_quantile(next_unit());
    }

private:
    static std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace pseudorank
