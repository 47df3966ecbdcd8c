#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace compute_verify {

using Digest = std::array<std::uint8_t, 32>;

/// Incremental SHA-256 (OpenSSL libcrypto behind the scenes).
class Sha256 {
public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(std::span<const std::uint8_t> bytes);
    /// Appends the IEEE754 bits of v, little-endian, 8 bytes.
    void update_f64(double v);
    Digest finish();

    /// Resets for reuse; cheaper than constructing a new hasher in hot loops.
    void reset();

private:
    void* ctx_;
};

Digest sha256(std::span<const std::uint8_t> bytes);

std::string to_hex(const Digest& d);
std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

/// Leading zero bits of the digest read big-endian (d[0] MSB first).
int leading_zero_bits(const Digest& d);

}  // namespace compute_verify
