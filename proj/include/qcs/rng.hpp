#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace qcs {

// splitmix64 finalizer: cheap, full-period, passes BigCrush as a mixer.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

// Deterministic stream derivation: fold each id into the state through the
// splitmix finalizer so (master, ids...) -> seed is order-sensitive and
// collision-resistant for practical purposes.
template <typename... Ids>
constexpr std::uint64_t derive_seed(std::uint64_t master, Ids... ids) {
    std::uint64_t h = splitmix64(master ^ 0x6a09e667f3bcc909ull);
    ((h = splitmix64(h ^ (static_cast<std::uint64_t>(ids) + 0x9e3779b97f4a7c15ull))), ...);
    return h;
}

// Counter-based splitmix64 generator. Small, fast, and reproducible across
// platforms (no distribution objects with unspecified algorithms).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_++); }

    // Uniform on [0, 1): 53 random mantissa bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Uniform integer in [0, n). Rejection-free modulo is fine here: n is
    // always tiny (<= 2^32) against a 64-bit stream, bias < 2^-32.
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    // Box-Muller, one fresh pair per call (no cached spare: keeps the stream
    // position a pure function of the number of calls).
    double normal(double mean, double stddev) {
        double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace qcs
