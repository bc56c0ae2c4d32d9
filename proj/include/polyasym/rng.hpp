#pragma once

#include <cstdint>

namespace polyasym {

/// Counter-based generator ("splitmix64-counter"): the value at index i is a
/// pure function of (key, i), so draws are reproducible under any evaluation
/// order or thread count. Streams are derived from one 64-bit master seed.
struct RngStream {
    std::uint64_t key = 0;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t at(std::uint64_t counter) const {
        return mix(key + counter * 0x9e3779b97f4a7c15ull);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01(std::uint64_t counter) const {
        return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform01(counter);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t counter, std::uint64_t n) const {
        return at(counter) % n;
    }
};

inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    return RngStream{RngStream::mix(master_seed ^ RngStream::mix(stream_id))};
}

inline const char* rng_name() { return "splitmix64-counter"; }

}  // namespace polyasym
