#pragma once

// Deterministic random source for simulation runs.
//
// xoshiro256** seeded through splitmix64, with independent streams derived
// from a single master seed. Stream assignment is fixed across the codebase:
//
//   0  placement: initial particle positions and generated node layouts
//   1  per-tick particle order shuffle
//   2  per-particle decisions: turn choices, blocked-heading resets,
//      division and survival draws, child placement and headings
//
// Every draw goes through the helpers below. Standard-library distributions
// and std::shuffle are deliberately avoided because their output is
// implementation-defined; with these helpers a (seed, scenario) pair replays
// bit-exactly on any compiler.

#include <cstdint>
#include <vector>

namespace physarum {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Rng {
public:
    Rng() { reseed(0, 0); }
    Rng(std::uint64_t seed, std::uint64_t stream) { reseed(seed, stream); }

    void reseed(std::uint64_t seed, std::uint64_t stream) {
        // fold the stream tag into the splitmix chain so nearby seeds and
        // streams start from uncorrelated states
        std::uint64_t sm = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0, 1), 53-bit resolution
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // uniform in [0, n); n == 0 returns 0
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool chance(double p) { return unit() < p; }

    double heading_deg() { return 360.0 * unit(); }

    // Fisher-Yates; unlike std::shuffle the draw sequence is pinned
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4] = {};
};

} // namespace physarum
