#pragma once

#include <cstdint>

namespace qdamp {

/// Counter-based splittable generator (SplitMix64 core).
///
/// A stream is addressed by (seed, stream_index); shot i of an experiment
/// draws from stream (base_seed, i), so serial and parallel schedules produce
/// bit-identical results on every platform.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix(seed ^ 0x9E3779B97F4A7C15ULL) ^ mix(stream + 0xC2B2AE3D27D4EB4FULL);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
};

}  // namespace qdamp
