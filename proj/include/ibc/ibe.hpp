// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ibc/curve.hpp"
#include "ibc/field.hpp"
#include "ibc/hash.hpp"
#include "ibc/pairing.hpp"
#include "ibc/rng.hpp"

namespace ibc {

/// Identifier of the fixed primitive suite (hash-to-point inner hash,
/// pairing-value KDF, payload AEAD, MAC). Only one suite is defined.
inline constexpr std::uint8_t kHashSuiteSha256AesGcm = 0x01;

inline constexpr std::size_t kCekLen = 32;
inline constexpr std::size_t kFingerprintLen = 8;

using ParamsFingerprint = std::array<std::uint8_t, kFingerprintLen>;

/// Public IBE environment: (p, q), generator P, P_pub = sP, distortion
/// constant ζ, primitive suite id.
struct SystemParams {
  ModulusPtr modulus;
  Point<Fp> generator;
  Point<Fp> public_point;
  Fp2 zeta;
  std::uint8_t hash_suite_id = kHashSuiteSha256AesGcm;
  ParamsFingerprint fingerprint{};

  std::vector<std::uint8_t> encode() const;
  static SystemParams decode(std::span<const std::uint8_t> blob,
                             std::size_t* consumed = nullptr);
};

struct MasterKey {
  Bignum s;  // uniform in [1, q)
};

struct IdentityPrivateKey {
  std::string identity;  // normalized
  Point<Fp> s_id;        // s·Q_ID

  std::vector<std::uint8_t> encode(const SystemParams& params) const;
  static IdentityPrivateKey decode(std::span<const std::uint8_t> blob,
                                   const SystemParams& params);
};

/// (U, V, W): U = rP; V = CEK ⊕ H2(ê(Q_ID, P_pub)^r); W = AEAD of the message
/// under the CEK with the header nonce.
struct IbeCiphertext {
  ParamsFingerprint fingerprint{};
  std::array<std::uint8_t, kAeadNonceLen> nonce{};
  Point<Fp> u;
  std::array<std::uint8_t, kCekLen> v{};
  std::vector<std::uint8_t> w;

  std::vector<std::uint8_t> encode() const;
  static IbeCiphertext decode(std::span<const std::uint8_t> blob,
                              const SystemParams& params);
};

/// Setup: parameter generation plus generator draw (redrawn until
/// ê(P, P) ≠ 1) and master-key draw. Deterministic for a seeded rng.
std::pair<SystemParams, MasterKey> setup(unsigned q_bits, unsigned p_bits,
                                         RandomSource& rng);

/// Q_ID for a (raw) identity; normalization applied first.
Point<Fp> derive_public_key(const SystemParams& params, const std::string& identity);

/// Extract: S_ID = s·Q_ID.
IdentityPrivateKey extract(const SystemParams& params, const MasterKey& master,
                           const std::string& identity);

/// ê(S_ID, P) = ê(Q_ID, P_pub) — holds for every honestly extracted key.
bool verify_private_key(const SystemParams& params, const IdentityPrivateKey& key);

IbeCiphertext encrypt(const SystemParams& params, const std::string& recipient,
                      std::span<const std::uint8_t> message, RandomSource& rng);

std::vector<std::uint8_t> decrypt(const SystemParams& params,
                                  const IdentityPrivateKey& key,
                                  const IbeCiphertext& ct);

/// H2: pairing value → 32-byte mask (serialize re||im, counter-mode SHA-256).
std::array<std::uint8_t, kCekLen> h2_mask(const Fp2& pairing_value);

}  // namespace ibc
