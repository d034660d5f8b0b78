#pragma once

#include <cstdint>
#include <random>

namespace segev {

// All stochastic behavior in the project flows through these helpers so that
// results depend only on explicit seeds, not on library-specific distribution
// internals. Streamed draws use std::mt19937_64 raw output (its sequence is
// fixed by the standard); stateless per-key noise uses splitmix64 mixing.

// Scene files record this identity so saved scenes are replayable.
inline constexpr const char* kGeneratorId = "mt19937_64-unit-v1";

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [lo, hi], inclusive. Modulo mapping; the tiny bias
    // is irrelevant for scene synthesis and keeps the mapping portable.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (hi <= lo) return lo;
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform in [-magnitude, magnitude].
    double signed_unit(double magnitude) {
        return magnitude * (2.0 * unit() - 1.0);
    }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Order-independent noise draw for a key tuple; uniform in [0, 1).
inline double hash_unit(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                        std::uint64_t c) {
    std::uint64_t h = splitmix64(seed ^ 0x5bf03635000a5ca5ULL);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace segev
