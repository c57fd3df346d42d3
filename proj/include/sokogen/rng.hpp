#pragma once

#include <cstdint>

namespace sokogen {

// splitmix64 step; also the seed expander for Rng.
inline uint64_t splitmix64_next(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derives an independent sub-seed from a master seed. Streams keep the
// different uses of one master seed (per-run PDBs, random walks, ...) apart.
inline uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index) {
    uint64_t s = master ^ (0x632be59bd9b4e019ull * (stream + 1)) ^ (0x9e3779b97f4a7c15ull * (index + 1));
    uint64_t a = splitmix64_next(s);
    uint64_t b = splitmix64_next(s);
    return a ^ (b << 1);
}

// Seed streams used across the code base. Values are arbitrary but frozen:
// recorded seeds must stay reproducible.
enum SeedStream : uint64_t {
    kStreamCollections = 1,  // pattern-collection sampling, indexed by pattern size
    kStreamRun = 2,          // aggregation run seeds
    kStreamWalk = 3,         // random-walk baseline
};

// xoshiro256**. Hand-rolled so that sampled collections are identical across
// platforms and standard-library versions (std::uniform_int_distribution is
// implementation-defined).
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : s_)
            word = splitmix64_next(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, bound); bound > 0. Rejection sampling keeps it unbiased.
    uint64_t below(uint64_t bound) {
        const uint64_t threshold = -bound % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold)
                return r % bound;
        }
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4];
};

}  // namespace sokogen
