#pragma once

#include <cstdint>
#include "qwk/int_types.hpp"

namespace qwk {

// splitmix64-seeded xoshiro256**. Self-contained so that fixed seeds give
// byte-identical streams on every platform (std:: distributions do not).
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& si : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            si = z ^ (z >> 31);
        }
    }

    uint64_t next() {
        auto rotl = [](uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    // uniform in [lo, hi]
    long range(long lo, long hi) { return lo + (long)below((uint64_t)(hi - lo + 1)); }

    Int int_range(long lo, long hi) { return Int(range(lo, hi)); }

  private:
    uint64_t s_[4];
};

}  // namespace qwk
