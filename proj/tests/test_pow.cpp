#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <string>

#include "compute_verify/digest.hpp"
#include "compute_verify/errors.hpp"
#include "compute_verify/pow.hpp"

using namespace compute_verify;

namespace {

std::vector<std::uint8_t> msg_bytes(const std::string& s) {
    return {s.begin(), s.end()};
}

std::vector<std::uint8_t> random_message(std::mt19937_64& rng) {
    std::vector<std::uint8_t> m(16);
    for (auto& b : m) b = static_cast<std::uint8_t>(rng());
    return m;
}

// Independent predicate: hash message||nonce with the one-shot helper and
// count zero bits by walking the digits, bypassing the Share code path.
int independent_leading_zeros(const std::vector<std::uint8_t>& message,
                              std::uint64_t nonce) {
    std::vector<std::uint8_t> buf = message;
    for (int i = 0; i < 8; ++i)
        buf.push_back(static_cast<std::uint8_t>((nonce >> (8 * i)) & 0xFF));
    const Digest d = sha256(buf);
    int zeros = 0;
    for (auto byte : d)
        for (int bit = 7; bit >= 0; --bit) {
            if ((byte >> bit) & 1) return zeros;
            ++zeros;
        }
    return zeros;
}

}  // namespace

TEST_CASE("difficulty zero mines nonce 0 immediately") {
    const auto share = mine(msg_bytes("anything"), 0, 1);
    REQUIRE(share.has_value());
    CHECK(share->nonce == 0);
    CHECK(verify_share(*share));
    CHECK(verify_share(Share{msg_bytes("x"), 123456789, 0}));
}

TEST_CASE("mined shares always verify and carry the minimum nonce") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const auto message = random_message(rng);
        const auto share = mine(message, 8, 1 << 16);
        REQUIRE(share.has_value());
        CHECK(verify_share(*share));
        // No earlier nonce qualifies.
        for (std::uint64_t nonce = 0; nonce < share->nonce; ++nonce)
            CHECK_FALSE(verify_share(Share{message, nonce, 8}));
    }
}

TEST_CASE("a perturbed nonce invalidates the share") {
    std::mt19937_64 rng(23);
    int surviving = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto share = mine(random_message(rng), 10, 1 << 20);
        REQUIRE(share.has_value());
        Share bumped = *share;
        bumped.nonce += 1;
        if (verify_share(bumped)) ++surviving;
    }
    // Each survives with probability 2^-10; zero survivors expected here.
    CHECK(surviving <= 1);
}

TEST_CASE("not-found is a value, not an error") {
    // Difficulty 64 will not be met in two attempts.
    CHECK_FALSE(mine(msg_bytes("m"), 64, 2).has_value());
    CHECK_THROWS_AS(mine(msg_bytes("m"), 65, 1), SpecError);
    CHECK_THROWS_AS(mine(msg_bytes("m"), -1, 1), SpecError);
    CHECK_THROWS_AS(mine(msg_bytes("m"), 8, 0), SpecError);
}

TEST_CASE("mean attempts at difficulty 8 sit within 3 standard errors of 256") {
    std::mt19937_64 rng(4242);
    const int trials = 200;
    double total_attempts = 0;
    for (int t = 0; t < trials; ++t) {
        const auto share = mine(random_message(rng), 8, 1 << 20);
        REQUIRE(share.has_value());
        total_attempts += static_cast<double>(share->nonce + 1);
    }
    const double mean = total_attempts / trials;
    // Geometric with p = 2^-8: mean 256, sd ~= 255.5.
    const double se = 255.5 / std::sqrt(static_cast<double>(trials));
    CHECK(std::fabs(mean - 256.0) <= 3 * se);
}

TEST_CASE("verify_share agrees with an independent predicate, exhaustively") {
    const auto message = msg_bytes("soundness-check");
    for (std::uint64_t nonce = 0; nonce < 2048; ++nonce) {
        const int zeros = independent_leading_zeros(message, nonce);
        for (int d : {0, 1, 2, 4, 8, 12})
            CHECK(verify_share(Share{message, nonce, d}) == (zeros >= d));
    }
}

TEST_CASE("confirmed work counts expected hashes") {
    CHECK(confirmed_work(10, 16) == doctest::Approx(655360.0));
    CHECK(confirmed_work(0, 20) == 0.0);
    CHECK(confirmed_work(1, 0) == 1.0);
}

TEST_CASE("confirmed work is an unbiased attempt estimator") {
    std::mt19937_64 rng(31337);
    const int campaigns = 20;
    const std::uint64_t attempts = 8192;
    const int difficulty = 8;
    double total_confirmed = 0;
    for (int c = 0; c < campaigns; ++c) {
        const auto shares = mine_campaign(random_message(rng), difficulty, attempts);
        for (const auto& s : shares) CHECK(verify_share(s));
        total_confirmed += confirmed_work(shares.size(), difficulty);
    }
    const double mean = total_confirmed / campaigns;
    // Var(confirmed) ~= attempts * 2^d per campaign.
    const double sigma_mean =
        std::sqrt(static_cast<double>(attempts) * std::exp2(difficulty) /
                  static_cast<double>(campaigns));
    CHECK(std::fabs(mean - static_cast<double>(attempts)) <= 3 * sigma_mean);
}

TEST_CASE("one extra difficulty bit halves the share frequency") {
    std::mt19937_64 rng(555);
    const auto message = random_message(rng);
    const std::uint64_t attempts = 1 << 17;  // 131072
    const auto coarse = mine_campaign(message, 6, attempts);
    const auto fine = mine_campaign(message, 7, attempts);
    REQUIRE(!coarse.empty());
    const double ratio =
        static_cast<double>(fine.size()) / static_cast<double>(coarse.size());
    CHECK(std::fabs(ratio - 0.5) <= 0.05);  // 10% of the expected 0.5
}
