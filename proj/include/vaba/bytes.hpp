// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vaba {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;
using Tag = std::array<std::uint8_t, 32>;

using PartyId = std::uint32_t;
using ViewNumber = std::uint64_t;

Bytes to_bytes(std::string_view s);

std::string hex_encode(std::span<const std::uint8_t> data);
Bytes hex_decode(std::string_view hex);  // throws std::invalid_argument on bad input

Digest sha256(std::span<const std::uint8_t> data);
Tag hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data);

// Stateless mixer used to derive independent RNG streams from one seed.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace vaba
