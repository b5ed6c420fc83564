// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmp.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ibc {

/// Arbitrary-precision non-negative-biased integer, a thin value-semantics
/// wrapper over GMP's mpz_t. Signed values are supported (subtraction may go
/// negative); modular helpers always return canonical non-negative results.
class Bignum {
 public:
  Bignum() { mpz_init(z_); }
  Bignum(unsigned long v) { mpz_init_set_ui(z_, v); }  // NOLINT: implicit by design
  Bignum(const Bignum& o) { mpz_init_set(z_, o.z_); }
  Bignum(Bignum&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  Bignum& operator=(const Bignum& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  Bignum& operator=(Bignum&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~Bignum() { mpz_clear(z_); }

  static Bignum from_decimal(const std::string& s);
  static Bignum from_bytes_be(std::span<const std::uint8_t> bytes);
  /// 2^bits
  static Bignum pow2(unsigned bits);

  /// Big-endian, fixed width; throws Error if the value does not fit.
  std::vector<std::uint8_t> to_bytes_be(std::size_t width) const;
  /// Big-endian minimal encoding (empty for zero).
  std::vector<std::uint8_t> to_bytes_be_min() const;
  std::string to_decimal() const;
  std::uint64_t to_u64() const;

  std::size_t bit_length() const {
    return mpz_sgn(z_) == 0 ? 0 : mpz_sizeinbase(z_, 2);
  }
  bool bit(std::size_t i) const { return mpz_tstbit(z_, i) != 0; }
  bool is_zero() const { return mpz_sgn(z_) == 0; }
  bool is_odd() const { return mpz_odd_p(z_) != 0; }
  int sign() const { return mpz_sgn(z_); }

  Bignum operator+(const Bignum& o) const;
  Bignum operator-(const Bignum& o) const;
  Bignum operator*(const Bignum& o) const;
  /// Floor division.
  Bignum operator/(const Bignum& o) const;
  /// Floor remainder: result has the sign of the divisor (canonical mod).
  Bignum operator%(const Bignum& o) const;
  Bignum operator-() const;
  Bignum operator<<(unsigned bits) const;
  Bignum operator>>(unsigned bits) const;

  Bignum& operator+=(const Bignum& o);
  Bignum& operator-=(const Bignum& o);
  Bignum& operator*=(const Bignum& o);

  Bignum operator+(unsigned long v) const;
  Bignum operator-(unsigned long v) const;
  Bignum operator*(unsigned long v) const;
  unsigned long mod_ui(unsigned long m) const { return mpz_fdiv_ui(z_, m); }

  bool operator==(const Bignum& o) const { return mpz_cmp(z_, o.z_) == 0; }
  bool operator!=(const Bignum& o) const { return !(*this == o); }
  bool operator<(const Bignum& o) const { return mpz_cmp(z_, o.z_) < 0; }
  bool operator<=(const Bignum& o) const { return mpz_cmp(z_, o.z_) <= 0; }
  bool operator>(const Bignum& o) const { return mpz_cmp(z_, o.z_) > 0; }
  bool operator>=(const Bignum& o) const { return mpz_cmp(z_, o.z_) >= 0; }
  bool operator==(unsigned long v) const { return mpz_cmp_ui(z_, v) == 0; }

  static Bignum powm(const Bignum& base, const Bignum& exp, const Bignum& mod);
  /// Modular inverse; returns false (and leaves out untouched) if none exists.
  static bool invert(const Bignum& a, const Bignum& mod, Bignum& out);
  static Bignum gcd(const Bignum& a, const Bignum& b);

  /// Trial division by small primes, then Miller-Rabin with `rounds` rounds.
  bool is_probable_prime(int rounds = 64) const;

  const mpz_t& raw() const { return z_; }
  mpz_t& raw() { return z_; }

 private:
  mpz_t z_;
};

}  // namespace ibc
