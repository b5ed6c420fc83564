// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ibc/bigint.hpp"
#include "ibc/errors.hpp"
#include "ibc/rng.hpp"

namespace ibc {

/// Per-thread tallies of plain field operations, for the bench CLI and the
/// precomputed-vs-direct pairing comparison.
struct FieldOpCounters {
  std::uint64_t mul = 0;
  std::uint64_t sqr = 0;
  std::uint64_t inv = 0;
  void reset() { mul = sqr = inv = 0; }
};
FieldOpCounters& field_op_counters();

/// The (p, q) pair behind one parameter set: p ≡ 11 (mod 12) prime,
/// q prime dividing p+1, cofactor = (p+1)/q.
struct PrimeModulus {
  Bignum p;
  unsigned bit_length = 0;
  Bignum q;
  Bignum cofactor;

  std::size_t byte_width() const { return (bit_length + 7) / 8; }
};

using ModulusPtr = std::shared_ptr<const PrimeModulus>;

/// Validates all PrimeModulus invariants (primality, congruences, divisibility).
ModulusPtr make_modulus(Bignum p, Bignum q);

/// True if q = 2^a ± 2^b ± 1 with a > b ≥ 1; exponents reported when requested.
bool solinas_exponents(const Bignum& q, unsigned* a_out = nullptr,
                       unsigned* b_out = nullptr);

/// Generates q (Solinas for production sizes) and p = 12qr − 1, both prime.
/// Production band: q_bits ≥ 160, p_bits in [512, 7680]. Toy band: p_bits < 32,
/// found by exhaustive search with the Solinas requirement waived.
ModulusPtr find_group_prime(unsigned q_bits, unsigned p_bits, RandomSource& rng,
                            std::uint64_t max_candidates = 1000000);

/// Element of F_p in canonical reduced form.
class Fp {
 public:
  Fp(Bignum v, ModulusPtr m);
  static Fp zero(const ModulusPtr& m) { return Fp(Bignum(0UL), m); }
  static Fp one(const ModulusPtr& m) { return Fp(Bignum(1UL), m); }

  const Bignum& value() const { return v_; }
  const ModulusPtr& modulus() const { return m_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return v_ == 1UL; }
  bool is_odd() const { return v_.is_odd(); }

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp operator-() const;
  Fp square() const;
  Fp inv() const;  // throws DivisionByZero on zero
  Fp pow(const Bignum& e) const;

  bool operator==(const Fp& o) const;
  bool operator!=(const Fp& o) const { return !(*this == o); }

  /// Fixed-width big-endian (width = modulus byte width).
  std::vector<std::uint8_t> to_bytes() const;
  /// Strict: rejects non-canonical encodings (value ≥ p or wrong width).
  static Fp from_bytes(std::span<const std::uint8_t> bytes, const ModulusPtr& m);

 private:
  void check_same(const Fp& o) const;
  Bignum v_;
  ModulusPtr m_;
};

/// Principal square root a^((p+1)/4) when a is a QR; NonResidue reported as nullopt.
std::optional<Fp> fp_sqrt(const Fp& a);
/// Unique cube root a^((2p−1)/3) (cubing is a bijection since p ≡ 2 mod 3).
Fp fp_cbrt(const Fp& a);

/// Element a + b·i of F_p² = F_p[i]/(i² + 1); valid because p ≡ 3 (mod 4).
class Fp2 {
 public:
  Fp2(Fp re, Fp im);
  static Fp2 zero(const ModulusPtr& m) { return Fp2(Fp::zero(m), Fp::zero(m)); }
  static Fp2 one(const ModulusPtr& m) { return Fp2(Fp::one(m), Fp::zero(m)); }
  static Fp2 lift(const Fp& re);

  const Fp& re() const { return re_; }
  const Fp& im() const { return im_; }
  const ModulusPtr& modulus() const { return re_.modulus(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }

  Fp2 operator+(const Fp2& o) const;
  Fp2 operator-(const Fp2& o) const;
  Fp2 operator*(const Fp2& o) const;
  Fp2 operator-() const;
  Fp2 square() const;
  Fp2 inv() const;  // via the norm re² + im²
  Fp2 conj() const { return Fp2(re_, -im_); }
  /// x ↦ x^p; equals conjugation since i^p = −i for p ≡ 3 (mod 4).
  Fp2 frobenius() const { return conj(); }
  Fp2 pow(const Bignum& e) const;
  /// Multiply by an F_p scalar (2 base-field multiplications).
  Fp2 scale(const Fp& s) const;

  bool operator==(const Fp2& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const Fp2& o) const { return !(*this == o); }

  /// re || im, each fixed-width big-endian.
  std::vector<std::uint8_t> to_bytes() const;
  static Fp2 from_bytes(std::span<const std::uint8_t> bytes, const ModulusPtr& m);

 private:
  Fp re_, im_;
};

/// Field-level parameter blob: magic "IBCF", version 0x01, then 4-byte
/// big-endian length-prefixed minimal big-endian p and q.
std::vector<std::uint8_t> encode_field_params(const PrimeModulus& m);
/// Decodes and validates; advances *consumed past the blob when non-null.
ModulusPtr decode_field_params(std::span<const std::uint8_t> blob,
                               std::size_t* consumed = nullptr);

}  // namespace ibc
