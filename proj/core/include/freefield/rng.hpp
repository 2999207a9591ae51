#pragma once

#include <cmath>
#include <cstdint>

namespace freefield {

/// Counter-based generator: every output is a pure function of
/// (seed, stream, counter), so draws are reproducible independently of
/// evaluation order and parallel schedule. Mixing is SplitMix64-style.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(stream + 0xbf58476d1ce4e5b9ull))) {}

    std::uint64_t bits(std::uint64_t counter) const { return mix(key_ ^ mix(counter + 0x94d049bb133111ebull)); }

    /// Uniform in (0, 1].
    double uniform(std::uint64_t counter) const {
        return (static_cast<double>(bits(counter) >> 11) + 1.0) * 0x1p-53;
    }

    /// Standard normal pair via Box-Muller from counters (2c, 2c+1).
    void normal_pair(std::uint64_t c, double& z0, double& z1) const {
        const double u1 = uniform(2 * c);
        const double u2 = uniform(2 * c + 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        z0 = r * std::cos(6.283185307179586476925286766559 * u2);
        z1 = r * std::sin(6.283185307179586476925286766559 * u2);
    }

    double normal(std::uint64_t c) const {
        double z0, z1;
        normal_pair(c, z0, z1);
        return z0;
    }

  private:
    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t key_;
};

} // namespace freefield
