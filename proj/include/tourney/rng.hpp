#pragma once

#include <cstdint>
#include <random>

namespace tourney {

/// Random stream used by every sampler and format engine.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
/// derives doubles and coin flips from raw bits so results are identical
/// across standard library implementations. Distribution objects from
/// <random> are deliberately not used for the same reason.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent sub-stream keyed by (master seed, index, domain). Streams
    /// for different indices do not depend on the order they are created in,
    /// which is what makes parallel campaigns reproducible.
    static Rng stream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t domain = 0);

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool coin() { return (engine_() >> 63) != 0; }

    /// Poisson variate with the given mean (inversion by sequential search;
    /// large means are split into a sum of smaller Poisson variates).
    std::uint32_t poisson(double mean);

private:
    std::mt19937_64 engine_;
};

/// Named stream domains so unrelated consumers of one master seed never share
/// a stream.
namespace stream_domain {
inline constexpr std::uint64_t tournament = 0;
inline constexpr std::uint64_t ground_truth = 1;
inline constexpr std::uint64_t cli = 2;
}  // namespace stream_domain

}  // namespace tourney
