#pragma once

// Deterministic random number generation for walk simulation.
//
// All randomness in the library flows through Rng (xoshiro256++) so that
// results are reproducible bit-for-bit across platforms and across the
// scalar/SIMD stepper variants.  Independent logical streams (one per trial,
// per walk, per sampling task) are derived from a (seed, stream_id) pair via
// SplitMix64, so batching order and thread count never change what any one
// stream produces.
//
// std::uniform_int_distribution and friends are implementation-defined and
// are deliberately not used anywhere.

#include <cstdint>

namespace mhwalk {

// SplitMix64: used only to expand seeds into xoshiro state.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ (Blackman & Vigna).  Fast, high quality, trivially
// replicable inside the SIMD stepper (same state words per lane).
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        SplitMix64 sm(seed);
        s_[0] = sm.next();
        s_[1] = sm.next();
        s_[2] = sm.next();
        s_[3] = sm.next();
    }

    // Derives the stream for (seed, stream_id).  Distinct stream ids give
    // statistically independent sequences; identical pairs give identical
    // sequences regardless of which backend or thread consumes them.
    static Rng stream(uint64_t seed, uint64_t stream_id) {
        SplitMix64 sm(seed ^ (0x6a09e667f3bcc909ULL + stream_id * 0x9e3779b97f4a7c15ULL));
        Rng r(sm.next());
        return r;
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1): top 52 bits scaled by 2^-52.  This exact
    // mapping is mirrored by the SIMD stepper, which cannot convert full
    // 64-bit integers to double directly.
    double next_unit() {
        return static_cast<double>(next_u64() >> 12) * 0x1.0p-52;
    }

    // Exactly uniform integer in [0, n), n >= 1.  Lemire's multiply-shift
    // rejection on the top 32 bits of one draw; redraws are rare
    // (probability < n / 2^32 per draw).
    uint32_t uniform_below(uint32_t n) {
        uint32_t x = static_cast<uint32_t>(next_u64() >> 32);
        uint64_t m = static_cast<uint64_t>(x) * n;
        uint32_t lo = static_cast<uint32_t>(m);
        if (lo < n) {
            const uint32_t threshold = (0u - n) % n;
            while (lo < threshold) {
                x = static_cast<uint32_t>(next_u64() >> 32);
                m = static_cast<uint64_t>(x) * n;
                lo = static_cast<uint32_t>(m);
            }
        }
        return static_cast<uint32_t>(m >> 32);
    }

    // 64-bit variant for large index spaces (split-graph ranks, edge ranks).
    uint64_t uniform_below64(uint64_t n) {
        uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        uint64_t lo = static_cast<uint64_t>(m);
        if (lo < n) {
            const uint64_t threshold = (0ULL - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    // State access for the SIMD stepper (lane load/store).
    const uint64_t* state() const { return s_; }
    void set_state(const uint64_t* s) {
        s_[0] = s[0];
        s_[1] = s[1];
        s_[2] = s[2];
        s_[3] = s[3];
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4];
};

}  // namespace mhwalk
