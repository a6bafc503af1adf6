#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace qcon {

// All randomness flows through this wrapper. The engine (mt19937_64) and the
// bounded-int mapping below are both fully specified, so identical seeds give
// identical streams on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Derives an independent stream from a tuple of keys, e.g.
    // (master_seed, topology_index, n, trial_index).
    static Rng derive(std::initializer_list<std::uint64_t> keys) {
        std::uint64_t s = 0x9e3779b97f4a7c15ull;
        for (std::uint64_t k : keys) s = mix(s ^ k);
        return Rng(s);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform over [0, bound), bound >= 1. Rejection sampling keeps the
    // mapping exact and platform-independent.
    int uniform_int(int bound) {
        const std::uint64_t b = static_cast<std::uint64_t>(bound);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return static_cast<int>(x % b);
    }

    // Uniform over [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
            std::swap(v[i], v[uniform_int(i + 1)]);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace qcon
