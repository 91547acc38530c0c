#include "deid/util/digest.hpp"

#include <openssl/sha.h>

namespace deid::util {

Sha256 sha256(std::span<const std::uint8_t> data) {
    Sha256 out{};
    SHA256(data.data(), data.size(), out.data());
    return out;
}

Sha256 sha256(std::string_view data) {
    return sha256(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

std::string hex(std::span<const std::uint8_t> data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0F]);
    }
    return out;
}

std::string sha256_hex(std::string_view data) {
    auto d = sha256(data);
    return hex(d);
}

std::uint64_t digest_u64(const Sha256& d) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | d[i];
    return v;
}

std::string digest_u128_decimal(const Sha256& d) {
    unsigned __int128 v = 0;
    for (int i = 0; i < 16; ++i) v = (v << 8) | d[i];
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace deid::util
