// SPDX-License-Identifier: Apache-2.0
#include "ibc/field.hpp"

#include <algorithm>
#include <utility>

#include "ibc/wire.hpp"

namespace ibc {

FieldOpCounters& field_op_counters() {
  thread_local FieldOpCounters counters;
  return counters;
}

// ---------------------------------------------------------------------------
// PrimeModulus

ModulusPtr make_modulus(Bignum p, Bignum q) {
  if (!p.is_probable_prime()) throw Error("modulus: p is not prime");
  if (p.mod_ui(12) != 11) throw Error("modulus: p != 11 mod 12");
  if (!q.is_probable_prime()) throw Error("modulus: q is not prime");
  Bignum order = p + 1UL;
  if (!(order % q).is_zero()) throw Error("modulus: q does not divide p+1");
  PrimeModulus m;
  m.bit_length = static_cast<unsigned>(p.bit_length());
  m.cofactor = order / q;
  m.p = std::move(p);
  m.q = std::move(q);
  return std::make_shared<const PrimeModulus>(std::move(m));
}

bool solinas_exponents(const Bignum& q, unsigned* a_out, unsigned* b_out) {
  std::size_t bl = q.bit_length();
  if (bl < 3) return false;
  for (std::size_t a : {bl - 1, bl}) {
    Bignum pa = Bignum::pow2(static_cast<unsigned>(a));
    for (int s1 : {1, -1}) {
      // q = 2^a + sb*2^b + s1  =>  q - 2^a - s1 = ±2^b
      Bignum rest = s1 == 1 ? q - pa - 1UL : q - pa + 1UL;
      if (rest.is_zero()) continue;
      Bignum mag = rest.sign() < 0 ? -rest : rest;
      std::size_t b = mag.bit_length() - 1;
      if (!(mag == Bignum::pow2(static_cast<unsigned>(b)))) continue;
      if (!(a > b && b >= 1)) continue;
      if (a_out) *a_out = static_cast<unsigned>(a);
      if (b_out) *b_out = static_cast<unsigned>(b);
      return true;
    }
  }
  return false;
}

namespace {

constexpr unsigned kToyBandBits = 32;
constexpr unsigned kMinProductionPBits = 512;
constexpr unsigned kMaxProductionPBits = 7680;
constexpr unsigned kMinProductionQBits = 160;

unsigned u64_bits(std::uint64_t v) {
  unsigned n = 0;
  while (v != 0) {
    ++n;
    v >>= 1;
  }
  return n;
}

// Largest prime divisor of n with the exact requested bit length, or zero.
std::uint64_t prime_divisor_with_bits(std::uint64_t n, unsigned bits) {
  std::uint64_t best = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      while (n % d == 0) n /= d;
      if (u64_bits(d) == bits && d > best) best = d;
    }
  }
  if (n > 1 && u64_bits(n) == bits && n > best) best = n;
  return best;
}

ModulusPtr find_toy_pair(unsigned q_bits, unsigned p_bits) {
  std::uint64_t lo = 1ULL << (p_bits - 1);
  std::uint64_t hi = 1ULL << p_bits;
  std::uint64_t p = lo + (23 - lo % 12) % 12;  // first value ≡ 11 (mod 12)
  for (; p < hi; p += 12) {
    if (!Bignum(p).is_probable_prime()) continue;
    std::uint64_t q = prime_divisor_with_bits(p + 1, q_bits);
    if (q < 3) continue;
    return make_modulus(Bignum(p), Bignum(q));
  }
  throw SearchExhausted("no toy (p, q) pair in the requested band");
}

Bignum find_solinas_prime(unsigned q_bits, RandomSource& rng) {
  struct Candidate {
    unsigned a;
    unsigned b;
    int sb;
    int s1;
  };
  std::vector<Candidate> candidates;
  // Plus forms first: their plain binary expansion has 3 set bits, which is
  // what keeps the Miller ladder short.
  for (unsigned b = 1; b + 1 < q_bits; ++b) {
    candidates.push_back({q_bits - 1, b, +1, +1});
    candidates.push_back({q_bits - 1, b, +1, -1});
  }
  std::size_t plus_count = candidates.size();
  for (unsigned b = 1; b + 1 < q_bits; ++b) {
    candidates.push_back({q_bits, b, -1, +1});
    candidates.push_back({q_bits, b, -1, -1});
  }
  // Shuffle within each form class so generation varies with the seed while
  // plus forms keep priority.
  auto shuffle = [&rng, &candidates](std::size_t lo, std::size_t hi) {
    for (std::size_t i = hi; i > lo + 1; --i) {
      std::size_t j = lo + rng.uniform_u64(i - lo);
      std::swap(candidates[i - 1], candidates[j]);
    }
  };
  shuffle(0, plus_count);
  shuffle(plus_count, candidates.size());

  for (const Candidate& c : candidates) {
    Bignum q = Bignum::pow2(c.a);
    Bignum pb = Bignum::pow2(c.b);
    q = c.sb == 1 ? q + pb : q - pb;
    q = c.s1 == 1 ? q + 1UL : q - 1UL;
    if (q.bit_length() != q_bits) continue;
    if (q.is_probable_prime()) return q;
  }
  throw SearchExhausted("no Solinas prime of the requested size");
}

}  // namespace

ModulusPtr find_group_prime(unsigned q_bits, unsigned p_bits, RandomSource& rng,
                            std::uint64_t max_candidates) {
  if (q_bits >= p_bits) throw Error("find_group_prime: q_bits must be below p_bits");
  if (p_bits < kToyBandBits) {
    if (q_bits < 2) throw Error("find_group_prime: q_bits too small");
    return find_toy_pair(q_bits, p_bits);
  }
  if (p_bits < kMinProductionPBits || p_bits > kMaxProductionPBits) {
    throw Error("find_group_prime: p_bits outside the 512..7680 production band");
  }
  if (q_bits < kMinProductionQBits) {
    throw Error("find_group_prime: production q_bits must be >= 160");
  }

  Bignum q = find_solinas_prime(q_bits, rng);
  Bignum twelve_q = q * 12UL;
  // p = 12qr − 1 lands in [2^(p_bits−1), 2^p_bits) exactly.
  Bignum r_lo = (Bignum::pow2(p_bits - 1) + twelve_q) / twelve_q;  // ceil
  Bignum r_hi = Bignum::pow2(p_bits) / twelve_q;
  if (r_hi < r_lo) throw SearchExhausted("empty r range");
  for (std::uint64_t i = 0; i < max_candidates; ++i) {
    Bignum r = rng.uniform_range(r_lo, r_hi);
    if ((r % q).is_zero()) continue;  // keep q out of the cofactor
    Bignum p = twelve_q * r - 1UL;
    if (!p.is_probable_prime()) continue;
    return make_modulus(p, q);
  }
  throw SearchExhausted("no prime p = 12qr - 1 found within the candidate budget");
}

// ---------------------------------------------------------------------------
// Fp

Fp::Fp(Bignum v, ModulusPtr m) : v_(std::move(v)), m_(std::move(m)) {
  if (!m_) throw Error("Fp: null modulus");
  if (v_.sign() < 0 || v_ >= m_->p) v_ = v_ % m_->p;
}

void Fp::check_same(const Fp& o) const {
  if (m_ == o.m_) return;
  if (m_->p == o.m_->p) return;
  throw ParamMismatch("Fp: mixed moduli");
}

Fp Fp::operator+(const Fp& o) const {
  check_same(o);
  Bignum r = v_ + o.v_;
  if (r >= m_->p) r -= m_->p;
  return Fp(std::move(r), m_);
}

Fp Fp::operator-(const Fp& o) const {
  check_same(o);
  Bignum r = v_ - o.v_;
  if (r.sign() < 0) r += m_->p;
  return Fp(std::move(r), m_);
}

Fp Fp::operator*(const Fp& o) const {
  check_same(o);
  ++field_op_counters().mul;
  return Fp(v_ * o.v_ % m_->p, m_);
}

Fp Fp::operator-() const {
  if (v_.is_zero()) return *this;
  return Fp(m_->p - v_, m_);
}

Fp Fp::square() const {
  ++field_op_counters().sqr;
  return Fp(v_ * v_ % m_->p, m_);
}

Fp Fp::inv() const {
  if (v_.is_zero()) throw DivisionByZero("Fp: inverse of zero");
  ++field_op_counters().inv;
  Bignum out;
  if (!Bignum::invert(v_, m_->p, out)) throw DivisionByZero("Fp: not invertible");
  return Fp(std::move(out), m_);
}

Fp Fp::pow(const Bignum& e) const {
  if (e.sign() < 0) throw Error("Fp: negative exponent");
  Fp acc = Fp::one(m_);
  std::size_t n = e.bit_length();
  for (std::size_t i = n; i > 0; --i) {
    acc = acc.square();
    if (e.bit(i - 1)) acc = acc * *this;
  }
  return acc;
}

bool Fp::operator==(const Fp& o) const {
  check_same(o);
  return v_ == o.v_;
}

std::vector<std::uint8_t> Fp::to_bytes() const { return v_.to_bytes_be(m_->byte_width()); }

Fp Fp::from_bytes(std::span<const std::uint8_t> bytes, const ModulusPtr& m) {
  if (bytes.size() != m->byte_width()) throw MalformedEncoding("Fp: wrong width");
  Bignum v = Bignum::from_bytes_be(bytes);
  if (v >= m->p) throw MalformedEncoding("Fp: non-canonical value");
  return Fp(std::move(v), m);
}

std::optional<Fp> fp_sqrt(const Fp& a) {
  if (a.is_zero()) return a;
  const ModulusPtr& m = a.modulus();
  Bignum e = (m->p + 1UL) >> 2;
  Fp x = a.pow(e);
  if (x.square() == a) return x;
  return std::nullopt;
}

Fp fp_cbrt(const Fp& a) {
  const ModulusPtr& m = a.modulus();
  Bignum e = (m->p * 2UL - 1UL) / Bignum(3UL);
  return a.pow(e);
}

// ---------------------------------------------------------------------------
// Fp2

Fp2::Fp2(Fp re, Fp im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.modulus() != im_.modulus() && !(re_.modulus()->p == im_.modulus()->p)) {
    throw ParamMismatch("Fp2: mixed moduli");
  }
}

Fp2 Fp2::lift(const Fp& re) { return Fp2(re, Fp::zero(re.modulus())); }

Fp2 Fp2::operator+(const Fp2& o) const { return Fp2(re_ + o.re_, im_ + o.im_); }
Fp2 Fp2::operator-(const Fp2& o) const { return Fp2(re_ - o.re_, im_ - o.im_); }
Fp2 Fp2::operator-() const { return Fp2(-re_, -im_); }

Fp2 Fp2::operator*(const Fp2& o) const {
  // (a+bi)(c+di) = (ac − bd) + (ad + bc)i
  Fp ac = re_ * o.re_;
  Fp bd = im_ * o.im_;
  Fp ad = re_ * o.im_;
  Fp bc = im_ * o.re_;
  return Fp2(ac - bd, ad + bc);
}

Fp2 Fp2::square() const {
  // (a+bi)² = (a−b)(a+b) + 2ab·i
  Fp cross = (re_ - im_) * (re_ + im_);
  Fp ab = re_ * im_;
  return Fp2(cross, ab + ab);
}

Fp2 Fp2::inv() const {
  if (is_zero()) throw DivisionByZero("Fp2: inverse of zero");
  Fp norm = re_.square() + im_.square();
  Fp ninv = norm.inv();
  return Fp2(re_ * ninv, -(im_ * ninv));
}

Fp2 Fp2::pow(const Bignum& e) const {
  if (e.sign() < 0) throw Error("Fp2: negative exponent");
  Fp2 acc = Fp2::one(modulus());
  std::size_t n = e.bit_length();
  for (std::size_t i = n; i > 0; --i) {
    acc = acc.square();
    if (e.bit(i - 1)) acc = acc * *this;
  }
  return acc;
}

Fp2 Fp2::scale(const Fp& s) const { return Fp2(re_ * s, im_ * s); }

std::vector<std::uint8_t> Fp2::to_bytes() const {
  std::vector<std::uint8_t> out = re_.to_bytes();
  std::vector<std::uint8_t> im = im_.to_bytes();
  out.insert(out.end(), im.begin(), im.end());
  return out;
}

Fp2 Fp2::from_bytes(std::span<const std::uint8_t> bytes, const ModulusPtr& m) {
  std::size_t w = m->byte_width();
  if (bytes.size() != 2 * w) throw MalformedEncoding("Fp2: wrong width");
  return Fp2(Fp::from_bytes(bytes.first(w), m), Fp::from_bytes(bytes.subspan(w), m));
}

// ---------------------------------------------------------------------------
// Parameter blob

std::vector<std::uint8_t> encode_field_params(const PrimeModulus& m) {
  std::vector<std::uint8_t> out = {'I', 'B', 'C', 'F', 0x01};
  wire::put_lp(out, m.p.to_bytes_be_min());
  wire::put_lp(out, m.q.to_bytes_be_min());
  return out;
}

ModulusPtr decode_field_params(std::span<const std::uint8_t> blob, std::size_t* consumed) {
  wire::Reader r(blob);
  r.expect_magic("IBCF");
  if (r.u8() != 0x01) throw MalformedEncoding("field params: unsupported version");
  Bignum p = Bignum::from_bytes_be(r.lp());
  Bignum q = Bignum::from_bytes_be(r.lp());
  if (consumed) *consumed = r.position();
  return make_modulus(std::move(p), std::move(q));
}

}  // namespace ibc
