#ifndef DQILAB_RNG_HPP
#define DQILAB_RNG_HPP

#include <cstdint>

namespace dqilab {

// splitmix64: deterministic across platforms, cheap enough to reseed per trial.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // unbiased uniform draw from [0, n)
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % n;
    }

    // 53-bit mantissa uniform in [0, 1)
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

// Independent substream for (seed, index) pairs; trial results must not depend
// on how trials are batched across threads.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    return SplitMix64(mixer.next());
}

}  // namespace dqilab

#endif
