// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "ibc/bigint.hpp"

namespace ibc {

/// Source of random bytes. Implementations: SystemRandom (OS entropy) and
/// HmacDrbg (deterministic, for seeded tests and the sensor-fed protocol DRBG).
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  /// Uniform integer in [0, bound) by rejection sampling; bound > 0.
  Bignum uniform_below(const Bignum& bound);
  /// Uniform integer in [lo, hi_inclusive].
  Bignum uniform_range(const Bignum& lo, const Bignum& hi_inclusive);
  std::uint64_t uniform_u64(std::uint64_t bound);
};

class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

/// HMAC-SHA256 DRBG (SP 800-90A shape, no personalization string).
class HmacDrbg final : public RandomSource {
 public:
  explicit HmacDrbg(std::span<const std::uint8_t> seed);
  explicit HmacDrbg(std::uint64_t seed);

  void reseed(std::span<const std::uint8_t> seed);
  void fill(std::span<std::uint8_t> out) override;

 private:
  void update(std::span<const std::uint8_t> data);

  std::array<std::uint8_t, 32> key_{};
  std::array<std::uint8_t, 32> v_{};
};

}  // namespace ibc
