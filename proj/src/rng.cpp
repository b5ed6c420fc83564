// SPDX-License-Identifier: Apache-2.0
#include "ibc/rng.hpp"

#include <openssl/rand.h>

#include <cstring>
#include <vector>

#include "ibc/errors.hpp"
#include "ibc/hash.hpp"

namespace ibc {

Bignum RandomSource::uniform_below(const Bignum& bound) {
  if (bound.sign() <= 0) throw Error("uniform_below: bound must be positive");
  std::size_t bits = bound.bit_length();
  std::size_t bytes = (bits + 7) / 8;
  unsigned excess = static_cast<unsigned>(8 * bytes - bits);
  std::vector<std::uint8_t> buf(bytes);
  for (;;) {
    fill(buf);
    if (excess > 0) buf[0] &= static_cast<std::uint8_t>(0xFF >> excess);
    Bignum x = Bignum::from_bytes_be(buf);
    if (x < bound) return x;
  }
}

Bignum RandomSource::uniform_range(const Bignum& lo, const Bignum& hi_inclusive) {
  if (hi_inclusive < lo) throw Error("uniform_range: empty range");
  Bignum span = hi_inclusive - lo + 1UL;
  return lo + uniform_below(span);
}

std::uint64_t RandomSource::uniform_u64(std::uint64_t bound) {
  if (bound == 0) throw Error("uniform_u64: bound must be positive");
  std::array<std::uint8_t, 8> b{};
  std::uint64_t v = bound;
  for (int i = 7; i >= 0; --i) {
    b[i] = static_cast<std::uint8_t>(v);
    v >>= 8;
  }
  return uniform_below(Bignum::from_bytes_be(b)).to_u64();
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw RngFailure("system entropy unavailable");
  }
}

HmacDrbg::HmacDrbg(std::span<const std::uint8_t> seed) {
  key_.fill(0x00);
  v_.fill(0x01);
  update(seed);
}

HmacDrbg::HmacDrbg(std::uint64_t seed) {
  std::array<std::uint8_t, 8> b{};
  for (int i = 7; i >= 0; --i) {
    b[i] = static_cast<std::uint8_t>(seed);
    seed >>= 8;
  }
  key_.fill(0x00);
  v_.fill(0x01);
  update(b);
}

void HmacDrbg::reseed(std::span<const std::uint8_t> seed) { update(seed); }

void HmacDrbg::update(std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> m;
  m.reserve(v_.size() + 1 + data.size());
  m.insert(m.end(), v_.begin(), v_.end());
  m.push_back(0x00);
  m.insert(m.end(), data.begin(), data.end());
  key_ = hmac_sha256(key_, m);
  v_ = hmac_sha256(key_, v_);
  if (!data.empty()) {
    m.assign(v_.begin(), v_.end());
    m.push_back(0x01);
    m.insert(m.end(), data.begin(), data.end());
    key_ = hmac_sha256(key_, m);
    v_ = hmac_sha256(key_, v_);
  }
}

void HmacDrbg::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    v_ = hmac_sha256(key_, v_);
    std::size_t take = std::min(v_.size(), out.size() - done);
    std::memcpy(out.data() + done, v_.data(), take);
    done += take;
  }
  update({});
}

}  // namespace ibc
