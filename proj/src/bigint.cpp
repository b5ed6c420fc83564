// SPDX-License-Identifier: Apache-2.0
#include "ibc/bigint.hpp"

#include <array>

#include "ibc/errors.hpp"

namespace ibc {

Bignum Bignum::from_decimal(const std::string& s) {
  Bignum r;
  if (mpz_set_str(r.z_, s.c_str(), 10) != 0) {
    throw Error("Bignum: bad decimal string");
  }
  return r;
}

Bignum Bignum::from_bytes_be(std::span<const std::uint8_t> bytes) {
  Bignum r;
  if (!bytes.empty()) {
    mpz_import(r.z_, bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return r;
}

Bignum Bignum::pow2(unsigned bits) {
  Bignum r;
  mpz_setbit(r.z_, bits);
  return r;
}

std::vector<std::uint8_t> Bignum::to_bytes_be(std::size_t width) const {
  if (mpz_sgn(z_) < 0) throw Error("Bignum: negative value not encodable");
  std::size_t need = (bit_length() + 7) / 8;
  if (need > width) throw Error("Bignum: value does not fit target width");
  std::vector<std::uint8_t> out(width, 0);
  if (need > 0) {
    std::size_t written = 0;
    mpz_export(out.data() + (width - need), &written, 1, 1, 1, 0, z_);
  }
  return out;
}

std::vector<std::uint8_t> Bignum::to_bytes_be_min() const {
  std::size_t need = (bit_length() + 7) / 8;
  return to_bytes_be(need);
}

std::string Bignum::to_decimal() const {
  char* s = mpz_get_str(nullptr, 10, z_);
  std::string out(s);
  void (*freefn)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(s, out.size() + 1);
  return out;
}

std::uint64_t Bignum::to_u64() const {
  if (mpz_sgn(z_) < 0 || bit_length() > 64) throw Error("Bignum: does not fit u64");
  std::uint64_t lo = mpz_get_ui(z_);
  if (mpz_sizeinbase(z_, 2) > 32) {
    // mpz_get_ui is fine on 64-bit limbs, but stay portable.
    Bignum hi = *this >> 32;
    lo = (static_cast<std::uint64_t>(mpz_get_ui(hi.z_)) << 32) | (mpz_fdiv_ui(z_, 0x100000000ULL));
  }
  return lo;
}

#define IBC_BN_BINOP(op, fn)                        \
  Bignum Bignum::operator op(const Bignum& o) const { \
    Bignum r;                                       \
    fn(r.z_, z_, o.z_);                             \
    return r;                                       \
  }

IBC_BN_BINOP(+, mpz_add)
IBC_BN_BINOP(-, mpz_sub)
IBC_BN_BINOP(*, mpz_mul)
#undef IBC_BN_BINOP

Bignum Bignum::operator/(const Bignum& o) const {
  if (o.is_zero()) throw DivisionByZero("Bignum: division by zero");
  Bignum r;
  mpz_fdiv_q(r.z_, z_, o.z_);
  return r;
}

Bignum Bignum::operator%(const Bignum& o) const {
  if (o.is_zero()) throw DivisionByZero("Bignum: modulus is zero");
  Bignum r;
  mpz_fdiv_r(r.z_, z_, o.z_);
  return r;
}

Bignum Bignum::operator-() const {
  Bignum r;
  mpz_neg(r.z_, z_);
  return r;
}

Bignum Bignum::operator<<(unsigned bits) const {
  Bignum r;
  mpz_mul_2exp(r.z_, z_, bits);
  return r;
}

Bignum Bignum::operator>>(unsigned bits) const {
  Bignum r;
  mpz_fdiv_q_2exp(r.z_, z_, bits);
  return r;
}

Bignum& Bignum::operator+=(const Bignum& o) {
  mpz_add(z_, z_, o.z_);
  return *this;
}
Bignum& Bignum::operator-=(const Bignum& o) {
  mpz_sub(z_, z_, o.z_);
  return *this;
}
Bignum& Bignum::operator*=(const Bignum& o) {
  mpz_mul(z_, z_, o.z_);
  return *this;
}

Bignum Bignum::operator+(unsigned long v) const {
  Bignum r;
  mpz_add_ui(r.z_, z_, v);
  return r;
}
Bignum Bignum::operator-(unsigned long v) const {
  Bignum r;
  mpz_sub_ui(r.z_, z_, v);
  return r;
}
Bignum Bignum::operator*(unsigned long v) const {
  Bignum r;
  mpz_mul_ui(r.z_, z_, v);
  return r;
}

Bignum Bignum::powm(const Bignum& base, const Bignum& exp, const Bignum& mod) {
  if (exp.sign() < 0) throw Error("Bignum: negative exponent");
  Bignum r;
  mpz_powm(r.z_, base.z_, exp.z_, mod.z_);
  return r;
}

bool Bignum::invert(const Bignum& a, const Bignum& mod, Bignum& out) {
  return mpz_invert(out.z_, a.z_, mod.z_) != 0;
}

Bignum Bignum::gcd(const Bignum& a, const Bignum& b) {
  Bignum r;
  mpz_gcd(r.z_, a.z_, b.z_);
  return r;
}

namespace {

constexpr std::array<unsigned, 54> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

}  // namespace

bool Bignum::is_probable_prime(int rounds) const {
  if (mpz_sgn(z_) <= 0) return false;
  for (unsigned sp : kSmallPrimes) {
    if (mpz_cmp_ui(z_, sp) == 0) return true;
    if (mpz_fdiv_ui(z_, sp) == 0) return false;
  }
  return mpz_probab_prime_p(z_, rounds) >= 1;
}

}  // namespace ibc
