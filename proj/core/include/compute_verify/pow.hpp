#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "compute_verify/digest.hpp"

namespace compute_verify {

// Proof-of-work declare/verify machinery for "this compute was mining"
// claims. SHA-256 over message || nonce (nonce as 8 bytes little-endian);
// a share qualifies when the big-endian digest has at least difficulty_bits
// leading zero bits.

struct Share {
    std::vector<std::uint8_t> message;
    std::uint64_t nonce = 0;
    int difficulty_bits = 0;
};

/// Scans nonces in ascending order from 0 and returns the first qualifying
/// share, or nullopt after max_attempts. Sharded implementations must still
/// return the minimum qualifying nonce.
std::optional<Share> mine(const std::vector<std::uint8_t>& message,
                          int difficulty_bits, std::uint64_t max_attempts);

/// All qualifying shares with nonce in [0, attempts). The share count times
/// 2^difficulty_bits is an unbiased estimate of attempts.
std::vector<Share> mine_campaign(const std::vector<std::uint8_t>& message,
                                 int difficulty_bits, std::uint64_t attempts);

/// One hash evaluation of the predicate; cost independent of difficulty.
bool verify_share(const Share& share);

/// Expected hash count evidenced by the shares: shares * 2^difficulty_bits.
double confirmed_work(std::uint64_t shares, int difficulty_bits);

}  // namespace compute_verify
