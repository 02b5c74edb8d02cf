#pragma once

// Deterministic randomness.
//
// Every random stream in the pipeline is an mt19937_64 seeded through
// derive_seed(parent, tag), a splitmix64/FNV-1a mix. Streams form a tree
//   root -> predicate -> repeat -> purpose ("split", "method/bpr", ...)
// so adding a method or predicate never perturbs another stream's draws.
//
// Bounded integers use masked rejection (unbiased) and normals use
// Box-Muller with a cached spare, both built on the raw 64-bit output.
// The uniform integer stream is therefore bit-identical across platforms;
// the normal stream is identical up to libm's exp/log/cos accuracy.

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "kglp/util.hpp"

namespace kglp {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag) {
    return splitmix64(parent ^ splitmix64(fnv1a64(tag)));
}

// Indexed child stream (repeat number, subject id, ...).
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    return splitmix64(splitmix64(parent) ^ splitmix64(index));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound), bound > 0. Masked rejection, no modulo bias.
    std::uint64_t uniform_below(std::uint64_t bound) {
        std::uint64_t mask = ~0ull >> std::countl_zero((bound - 1) | 1);
        for (;;) {
            std::uint64_t v = engine_() & mask;
            if (v < bound) return v;
        }
    }

    std::uint32_t uniform_index(std::uint32_t bound) {
        return static_cast<std::uint32_t>(uniform_below(bound));
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1]; never 0, safe under log().
    double uniform01_pos() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    // Standard normal via Box-Muller; generates pairs, caches the spare.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double r = std::sqrt(-2.0 * std::log(uniform01_pos()));
        double a = 2.0 * 3.14159265358979323846 * uniform01();
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Pure hash-to-uniform for stateless scorers: same (seed, a, b) in, same
// value in [0, 1) out.
inline double hash_uniform01(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = splitmix64(seed ^ splitmix64((a << 32) ^ b ^ (b << 17)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace kglp
