#pragma once

#include <cstdint>

namespace gridnav {

// SplitMix64 generator. All randomness in the project flows through this
// class so that a single 64-bit seed reproduces a run bit-exactly,
// independent of standard-library distribution internals.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [0, n); always consumes exactly one draw
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t x = next();
        return n ? x % n : 0;
    }

    // uniform integer in [lo, hi], inclusive
    int next_int(int lo, int hi) {
        return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi) - lo + 1));
    }

  private:
    std::uint64_t state_;
};

} // namespace gridnav
