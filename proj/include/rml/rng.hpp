#pragma once

#include <cstdint>

namespace rml {

/// Counter-based pseudo-random generator (algorithm id "splitmix64-counter-v1").
///
/// Output i of stream (seed, stream) is splitmix64 applied to a counter, so a
/// generator is a pure function of (seed, stream, counter). Results are
/// bit-identical across platforms and builds, which makes experiment outputs
/// reproducible byte for byte. Sub-streams (one per episode, per seed) come
/// from substream(), not from sharing one sequence.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ull))), counter_(0) {}

    static const char* algorithm() { return "splitmix64-counter-v1"; }

    std::uint64_t next_u64() {
        std::uint64_t z = base_ + (++counter_) * 0x9e3779b97f4a7c15ull;
        return mix(z);
    }

    /// Uniform integer in [0, n), n >= 1. Fixed-point multiply, no rejection;
    /// bias is below 2^-32 for the small n used here and identical everywhere.
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Derived independent generator; (id, lane) names the sub-stream.
    Rng substream(std::uint64_t id, std::uint64_t lane = 0) const {
        Rng r(0);
        r.base_ = mix(base_ ^ mix(id + 0xbf58476d1ce4e5b9ull) ^ mix(lane + 0x94d049bb133111ebull));
        r.counter_ = 0;
        return r;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t base_;
    std::uint64_t counter_;
};

} // namespace rml
