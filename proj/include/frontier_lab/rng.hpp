#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace frontier_lab {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Fixed algorithm so that
// seeded runs reproduce bit-identically on every platform; std::*_distribution
// is implementation-defined and must not be used anywhere in this project.
constexpr uint64_t splitmix64_mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    // Unbiased integer in [0, bound) via rejection sampling.
    uint64_t below(uint64_t bound) {
        if (bound < 2) return 0;
        const uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % bound;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 mantissa bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller. Consumes two draws.
    double normal() {
        double u = unit();
        while (u <= 0.0) u = unit();
        const double v = unit();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
    }

private:
    uint64_t state_;
};

// Seed-derivation streams. The full scheme is
//   child = splitmix64_mix(splitmix64_mix(parent + GOLDEN*(stream+1)) + index)
// which lets any map / episode / oracle call / training run be re-derived and
// re-run in isolation from the manifest.
namespace seed_stream {
inline constexpr uint64_t map_gen = 1;
inline constexpr uint64_t episode = 2;
inline constexpr uint64_t sampler = 3;
inline constexpr uint64_t oracle = 4;
inline constexpr uint64_t dataset = 5;
inline constexpr uint64_t net_init = 6;
inline constexpr uint64_t shuffle = 7;
inline constexpr uint64_t suite = 8;
} // namespace seed_stream

constexpr uint64_t derive_seed(uint64_t parent, uint64_t stream, uint64_t index) {
    uint64_t x = splitmix64_mix(parent + 0x9e3779b97f4a7c15ull * (stream + 1));
    return splitmix64_mix(x + index);
}

// Fisher-Yates with SplitMix64 draws.
template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        const size_t j = static_cast<size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace frontier_lab
