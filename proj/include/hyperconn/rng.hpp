#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace hyperconn {

/// Per-trial seed. The pair (master, trial_index) fully determines the
/// generator stream of one trial, independently of scheduling order.
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t trial_index = 0;

    friend bool operator==(const Seed&, const Seed&) = default;
};

namespace detail {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/**
 * xoshiro256** (Blackman & Vigna). The algorithm is fixed so that every
 * sampled hypergraph is bit-reproducible across platforms; all derived
 * quantities (bounded integers, doubles) are computed here rather than
 * through <random> distributions, whose output is implementation-defined.
 *
 * Seeding is counter-mode SplitMix64: with key = mix64(master), state word i
 * of trial t is mix64(key + golden * (4t + i + 1)).
 */
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(Seed seed) noexcept {
        const std::uint64_t key = detail::mix64(seed.master);
        for (std::uint64_t i = 0; i < 4; ++i) {
            state_[i] = detail::mix64(key + detail::kGolden * (4 * seed.trial_index + i + 1));
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        const std::uint64_t result = detail::rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, bound), unbiased (Lemire's multiply-shift with rejection).
    std::uint64_t below(std::uint64_t bound) noexcept {
        if (bound <= 1) return 0;
        unsigned __int128 product = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                product = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1].
    double uniform_open_closed() noexcept { return 1.0 - uniform(); }

private:
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace hyperconn
