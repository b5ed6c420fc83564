// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ibc {

using Digest32 = std::array<std::uint8_t, 32>;

Digest32 sha256(std::span<const std::uint8_t> data);
Digest32 hmac_sha256(std::span<const std::uint8_t> key,
                     std::span<const std::uint8_t> data);

/// Counter-mode extraction over SHA-256: block i = H(label || 0x00 || be32(i) || data).
std::vector<std::uint8_t> kdf(std::string_view label,
                              std::span<const std::uint8_t> data,
                              std::size_t out_len);
Digest32 kdf32(std::string_view label, std::span<const std::uint8_t> data);

inline constexpr std::size_t kAeadKeyLen = 32;
inline constexpr std::size_t kAeadNonceLen = 12;
inline constexpr std::size_t kAeadTagLen = 16;

/// AES-256-GCM; returns ciphertext || 16-byte tag.
std::vector<std::uint8_t> aead_seal(std::span<const std::uint8_t, kAeadKeyLen> key,
                                    std::span<const std::uint8_t, kAeadNonceLen> nonce,
                                    std::span<const std::uint8_t> aad,
                                    std::span<const std::uint8_t> plaintext);

/// Returns nullopt if the tag does not verify.
std::optional<std::vector<std::uint8_t>> aead_open(
    std::span<const std::uint8_t, kAeadKeyLen> key,
    std::span<const std::uint8_t, kAeadNonceLen> nonce,
    std::span<const std::uint8_t> aad,
    std::span<const std::uint8_t> boxed);

}  // namespace ibc
