#pragma once

#include <cstdint>
#include <random>

namespace fdsched {

// mt19937_64 with explicitly defined derived draws, so sequences do not depend on
// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Top 53 bits scaled into [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double low, double high) { return low + (high - low) * uniform(); }

    // Uniform integer in [0, n) by rejection of the biased tail.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fdsched
