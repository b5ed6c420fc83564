// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>

#include "ibc/ibe.hpp"
#include "ibc/rng.hpp"

namespace fixtures {

inline constexpr std::uint64_t kToySeed = 0x1BC;
inline constexpr std::uint64_t kBigSeed = 42;

inline const ibc::ModulusPtr& mod11() {
  static ibc::ModulusPtr m = ibc::make_modulus(ibc::Bignum(11UL), ibc::Bignum(3UL));
  return m;
}

inline const ibc::ModulusPtr& mod59() {
  static ibc::ModulusPtr m = ibc::make_modulus(ibc::Bignum(59UL), ibc::Bignum(5UL));
  return m;
}

/// Deterministic toy IBE environment (p = 59, q = 5, seed 0x1BC).
inline const std::pair<ibc::SystemParams, ibc::MasterKey>& toy_ibe() {
  static auto v = [] {
    ibc::HmacDrbg rng(kToySeed);
    return ibc::setup(3, 6, rng);
  }();
  return v;
}

/// Deterministic production-size environment (160-bit Solinas q, 512-bit p).
inline const std::pair<ibc::SystemParams, ibc::MasterKey>& big_ibe() {
  static auto v = [] {
    ibc::HmacDrbg rng(kBigSeed);
    return ibc::setup(160, 512, rng);
  }();
  return v;
}

}  // namespace fixtures
