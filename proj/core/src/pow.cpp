#include "compute_verify/pow.hpp"

#include <cmath>

#include "compute_verify/errors.hpp"

namespace compute_verify {

namespace {

void check_difficulty(int difficulty_bits) {
    if (difficulty_bits < 0 || difficulty_bits > 64)
        throw SpecError("difficulty_bits must lie in [0, 64]");
}

Digest share_digest(const std::vector<std::uint8_t>& message, std::uint64_t nonce) {
    Sha256 h;
    h.update(message);
    std::uint8_t le[8];
    for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>((nonce >> (8 * i)) & 0xFF);
    h.update(le);
    return h.finish();
}

}  // namespace

std::optional<Share> mine(const std::vector<std::uint8_t>& message,
                          int difficulty_bits, std::uint64_t max_attempts) {
    check_difficulty(difficulty_bits);
    if (max_attempts == 0) throw SpecError("max_attempts must be > 0");
    Sha256 h;
    for (std::uint64_t nonce = 0; nonce < max_attempts; ++nonce) {
        h.reset();
        h.update(message);
        std::uint8_t le[8];
        for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>((nonce >> (8 * i)) & 0xFF);
        h.update(le);
        if (leading_zero_bits(h.finish()) >= difficulty_bits)
            return Share{message, nonce, difficulty_bits};
    }
    return std::nullopt;
}

std::vector<Share> mine_campaign(const std::vector<std::uint8_t>& message,
                                 int difficulty_bits, std::uint64_t attempts) {
    check_difficulty(difficulty_bits);
    std::vector<Share> shares;
    Sha256 h;
    for (std::uint64_t nonce = 0; nonce < attempts; ++nonce) {
        h.reset();
        h.update(message);
        std::uint8_t le[8];
        for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>((nonce >> (8 * i)) & 0xFF);
        h.update(le);
        if (leading_zero_bits(h.finish()) >= difficulty_bits)
            shares.push_back(Share{message, nonce, difficulty_bits});
    }
    return shares;
}

bool verify_share(const Share& share) {
    check_difficulty(share.difficulty_bits);
    return leading_zero_bits(share_digest(share.message, share.nonce)) >=
           share.difficulty_bits;
}

double confirmed_work(std::uint64_t shares, int difficulty_bits) {
    check_difficulty(difficulty_bits);
    return static_cast<double>(shares) * std::exp2(difficulty_bits);
}

}  // namespace compute_verify
