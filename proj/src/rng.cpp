#include "tourney/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace tourney {

Rng Rng::stream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t domain) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(master_seed), hi(master_seed), lo(index), hi(index), lo(domain), hi(domain)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return Rng((static_cast<std::uint64_t>(words[1]) << 32) | words[0]);
}

std::uint32_t Rng::poisson(double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson mean must be finite and nonnegative");
    }
    if (mean == 0.0) {
        return 0;
    }
    // exp(-mean) underflows near 745; stay well clear.
    constexpr double kChunk = 500.0;
    if (mean > kChunk) {
        const auto parts = static_cast<std::uint32_t>(std::ceil(mean / kChunk));
        const double part_mean = mean / parts;
        std::uint32_t total = 0;
        for (std::uint32_t i = 0; i < parts; ++i) {
            total += poisson(part_mean);
        }
        return total;
    }

    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint32_t k = 0;
    while (u >= cdf) {
        ++k;
        p *= mean / k;
        const double next = cdf + p;
        if (next == cdf) {
            // Tail mass below double resolution.
            break;
        }
        cdf = next;
    }
    return k;
}

}  // namespace tourney
