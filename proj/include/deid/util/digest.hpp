#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace deid::util {

using Sha256 = std::array<std::uint8_t, 32>;

Sha256 sha256(std::span<const std::uint8_t> data);
Sha256 sha256(std::string_view data);

std::string hex(std::span<const std::uint8_t> data);
std::string sha256_hex(std::string_view data);

/// First 8 bytes of the digest as a big-endian unsigned value.
std::uint64_t digest_u64(const Sha256& d);

/// Decimal rendering of the first 16 digest bytes taken as one
/// big-endian 128-bit unsigned integer. At most 39 digits.
std::string digest_u128_decimal(const Sha256& d);

}  // namespace deid::util
