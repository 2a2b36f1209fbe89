#pragma once

#include <cstdint>
#include <vector>

namespace wez {

// Counter-based 64-bit generator (splitmix64 finalizer applied to a
// key + counter). Output i depends only on (seed, stream, i), so any
// draw is reproducible across platforms and independent of call order
// in other streams.
//
// Stream assignments used by this project:
//   doe:        kStreamStrata + var index  (per-variable permutations)
//               kStreamJitter + var index  (within-stratum jitter)
//               kStreamMaximin             (swap proposals)
//   preprocess: kStreamSplit               (train/test permutation)
//   surrogate:  kStreamInit + layer index  (weight init)
//               kStreamShuffle + epoch     (mini-batch shuffling)
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ 0x2545F4914F6CDD1DULL, stream)) {}

    std::uint64_t next() { return mix(key_, counter_++); }

    // uniform in [0, 1) with 53-bit resolution
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // unbiased uniform integer in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    static std::uint64_t mix(std::uint64_t key, std::uint64_t counter) {
        std::uint64_t z = key + 0x9E3779B97F4A7C15ULL * (counter + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

inline constexpr std::uint64_t kStreamStrata = 0x100;
inline constexpr std::uint64_t kStreamJitter = 0x200;
inline constexpr std::uint64_t kStreamMaximin = 0x300;
inline constexpr std::uint64_t kStreamSplit = 0x400;
inline constexpr std::uint64_t kStreamInit = 0x500;
inline constexpr std::uint64_t kStreamShuffle = 0x10000;

}  // namespace wez
