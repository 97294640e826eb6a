#pragma once

#include <cstdint>

namespace itc {

// splitmix64 finalizer. Used both as the PRNG step and as the mixer that
// derives independent seeds for cells, trials and per-node streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 1)));
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                 std::uint64_t d) {
    return mix_seed(mix_seed(a, b, c), d);
}

// Deterministic generator with a platform-independent stream. Standard
// library distributions are implementation-defined, so uniform draws are
// produced here directly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double unit_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit_double(); }

    // Uniform integer in [0, bound) by rejection-free scaling (bound << 2^64
    // at the sizes used here, so modulo bias is negligible for shuffles but
    // we still use Lemire's method for exactness at small bounds).
    std::uint64_t below(std::uint64_t bound) {
        // Lemire's nearly-divisionless method.
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t t = (0 - bound) % bound;
            while (lo < t) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Independent stream for a sub-entity (e.g. one node of a trajectory).
    Rng fork(std::uint64_t stream_id) const { return Rng(mix_seed(state_, stream_id)); }

private:
    std::uint64_t state_;
};

} // namespace itc
