#pragma once

#include <cstdint>
#include <random>

namespace kpath {

/// Deterministic random source used by every randomized algorithm in the
/// library. The core generator is std::mt19937_64, whose output sequence is
/// fixed by the C++ standard, so identical (seed, stream) pairs produce
/// identical draws on every platform. Worker k of a multi-worker run uses
/// stream k; streams are decorrelated by passing the (seed, stream) pair
/// through a splitmix64 finalizer before seeding the engine.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(mix(seed, stream)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). Multiply-shift with rejection of the
    /// short low-word range, so the result is exactly uniform and the slow
    /// modulo only runs on the (vanishingly rare) rejection path.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        unsigned __int128 product =
            static_cast<unsigned __int128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0ULL - bound) % bound;
            while (low < threshold) {
                product = static_cast<unsigned __int128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace kpath
