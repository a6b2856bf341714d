/*
   Copyright 2026 The almostnet authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ALMOSTNET_RNG_HPP
#define ALMOSTNET_RNG_HPP

#include <cstdint>

namespace anet {

/// Counter-based generator: output i is a fixed hash of
/// seed + i * golden_gamma, the splitmix64 scheme. The same (seed,
/// stream) always yields the same sequence, and any position can be
/// recomputed from its counter alone.
class CounterRng {
  public:
    explicit CounterRng(uint64_t seed, uint64_t stream = 0)
        : base_(mix(seed ^ mix(stream * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL))) {}

    uint64_t next() { return at(counter_++); }

    /// Value at an absolute counter position (does not advance).
    uint64_t at(uint64_t counter) const { return mix(base_ + counter * 0x9E3779B97F4A7C15ULL); }

    /// Unbiased draw from {0, ..., bound-1} by rejection.
    uint32_t next_below(uint32_t bound) {
        const uint64_t b = bound;
        const uint64_t reject = (0 - b) % b;  // 2^64 mod bound
        uint64_t v = next();
        while (v < reject) v = next();
        return static_cast<uint32_t>(v % b);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    uint64_t counter() const { return counter_; }

  private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t base_;
    uint64_t counter_ = 0;
};

/// Stream tags keep the independent random uses of one seed apart.
enum class RngStream : uint64_t {
    translates = 1,
    perturbation = 2,
    iid_baseline = 3,
    selftest = 4,
};

inline CounterRng make_rng(uint64_t seed, RngStream stream) {
    return CounterRng(seed, static_cast<uint64_t>(stream));
}

}  // namespace anet

#endif
