#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace bondscape {

// Deterministic 64-bit generator used for every random draw a simulation
// makes. The core is splitmix64: the state advances by a fixed increment
// (a counter) and the output is a bijective mix of the state, so streams
// derived from distinct seeds are independent for all practical purposes
// and results are identical across platforms and thread counts.
//
// Draw protocol (results depend on it, so it is fixed here):
//   next()            splitmix64 counter step + output mix
//   uniform_index(n)  unbiased integer in [0, n) via rejection sampling
//   uniform_int(a, b) a + uniform_index(b - a + 1), inclusive bounds
//   shuffle(v)        Fisher-Yates from the back: for i = size-1 .. 1,
//                     one uniform_index(i + 1) draw, swap(v[i], v[draw])
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent stream for one epoch of a campaign. Master seed and epoch
    // index are hashed together so epochs can run on any thread in any order
    // and still see the exact same draws.
    static Rng for_epoch(std::uint64_t master_seed, std::uint64_t epoch_index) {
        return Rng(mix(mix(master_seed) ^ mix(epoch_index + kGolden)));
    }

    std::uint64_t next() {
        state_ += kGolden;
        return mix(state_);
    }

    // Unbiased integer in [0, n). n must be nonzero.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform integer on the inclusive range [lo, hi].
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform_index(
                   static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

    std::uint64_t state() const { return state_; }
    bool operator==(const Rng&) const = default;

    static constexpr const char* family() { return "splitmix64-streams/v1"; }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace bondscape
