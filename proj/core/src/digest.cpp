#include "compute_verify/digest.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cstring>
#include <stdexcept>

namespace compute_verify {

namespace {

const EVP_MD* sha256_md() {
    static const EVP_MD* md = EVP_sha256();
    return md;
}

EVP_MD_CTX* as_ctx(void* p) { return static_cast<EVP_MD_CTX*>(p); }

}  // namespace

Sha256::Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(as_ctx(ctx_), sha256_md(), nullptr) != 1)
        throw std::runtime_error("SHA-256 context initialization failed");
}

Sha256::~Sha256() { EVP_MD_CTX_free(as_ctx(ctx_)); }

void Sha256::update(std::span<const std::uint8_t> bytes) {
    if (EVP_DigestUpdate(as_ctx(ctx_), bytes.data(), bytes.size()) != 1)
        throw std::runtime_error("SHA-256 update failed");
}

void Sha256::update_f64(double v) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    std::uint8_t le[8];
    for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>((bits >> (8 * i)) & 0xFF);
    update(le);
}

Digest Sha256::finish() {
    Digest d{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(as_ctx(ctx_), d.data(), &len) != 1 || len != d.size())
        throw std::runtime_error("SHA-256 finalization failed");
    return d;
}

void Sha256::reset() {
    if (EVP_DigestInit_ex(as_ctx(ctx_), sha256_md(), nullptr) != 1)
        throw std::runtime_error("SHA-256 reset failed");
}

Digest sha256(std::span<const std::uint8_t> bytes) {
    Sha256 h;
    h.update(bytes);
    return h.finish();
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

std::string to_hex(const Digest& d) {
    return to_hex(std::span<const std::uint8_t>(d.data(), d.size()));
}

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::vector<std::uint8_t> from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_nibble(hex[2 * i]);
        const int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

int leading_zero_bits(const Digest& d) {
    int zeros = 0;
    for (auto byte : d) {
        if (byte == 0) {
            zeros += 8;
            continue;
        }
        zeros += std::countl_zero(byte);  // counts within the 8-bit type
        break;
    }
    return zeros;
}

}  // namespace compute_verify
