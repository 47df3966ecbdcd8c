#pragma once

#include <cstdint>

namespace compute_verify {

/// splitmix64. Fixed here byte-for-byte so that any implementation, in any
/// language, reproduces the golden vectors:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// uniform01 maps the top 53 bits to [0, 1): (next() >> 11) * 2^-53.
class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += kGamma);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [-1, 1): 2*u - 1.
    double uniform_sym() { return 2.0 * uniform01() - 1.0; }

    /// The generator state after n draws from seed s is s + n*kGamma, which
    /// makes any offset of the stream addressable in O(1).
    static SplitMix64 at_offset(std::uint64_t seed, std::uint64_t draws) {
        return SplitMix64(seed + draws * kGamma);
    }

private:
    std::uint64_t state_;
};

}  // namespace compute_verify
