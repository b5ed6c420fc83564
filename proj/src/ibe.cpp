// SPDX-License-Identifier: Apache-2.0
#include "ibc/ibe.hpp"

#include <cstring>

#include "ibc/hash.hpp"
#include "ibc/identity.hpp"
#include "ibc/wire.hpp"

namespace ibc {

namespace {

ParamsFingerprint fingerprint_of(std::span<const std::uint8_t> blob) {
  Digest32 d = sha256(blob);
  ParamsFingerprint fp{};
  std::memcpy(fp.data(), d.data(), fp.size());
  return fp;
}

std::span<const std::uint8_t> as_span(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace

std::vector<std::uint8_t> SystemParams::encode() const {
  std::vector<std::uint8_t> out = encode_field_params(*modulus);
  wire::put_u8(out, hash_suite_id);
  wire::put_lp(out, encode_point(generator));
  wire::put_lp(out, encode_point(public_point));
  return out;
}

SystemParams SystemParams::decode(std::span<const std::uint8_t> blob,
                                  std::size_t* consumed) {
  std::size_t field_len = 0;
  ModulusPtr m = decode_field_params(blob, &field_len);
  wire::Reader r(blob.subspan(field_len));
  std::uint8_t suite = r.u8();
  if (suite != kHashSuiteSha256AesGcm) {
    throw MalformedEncoding("params: unknown hash suite");
  }
  Point<Fp> gen = decode_point(r.lp(), m);
  Point<Fp> pub = decode_point(r.lp(), m);
  std::size_t total = field_len + r.position();
  if (consumed == nullptr && total != blob.size()) {
    throw MalformedEncoding("params: trailing bytes");
  }
  if (consumed) *consumed = total;

  if (gen.is_infinity() || pub.is_infinity()) {
    throw MalformedEncoding("params: generator must not be infinity");
  }
  if (!mul_to_affine(m->q, gen).is_infinity() ||
      !mul_to_affine(m->q, pub).is_infinity()) {
    throw MalformedEncoding("params: points not in the order-q subgroup");
  }
  SystemParams params{m, gen, pub, compute_zeta(m), suite, {}};
  params.fingerprint = fingerprint_of(blob.first(total));
  if (tate_pairing(params.generator, params.generator, params.zeta).is_one()) {
    throw MalformedEncoding("params: degenerate generator");
  }
  return params;
}

std::pair<SystemParams, MasterKey> setup(unsigned q_bits, unsigned p_bits,
                                         RandomSource& rng) {
  ModulusPtr m = find_group_prime(q_bits, p_bits, rng);
  Fp2 zeta = compute_zeta(m);

  Point<Fp> generator = Point<Fp>::infinity(m);
  bool found = false;
  for (int tries = 0; tries < 64 && !found; ++tries) {
    Point<Fp> candidate = mul_to_affine(m->cofactor, random_curve_point(m, rng));
    if (candidate.is_infinity()) continue;
    try {
      if (tate_pairing(candidate, candidate, zeta).is_one()) continue;
    } catch (const ZeroEvaluation&) {
      continue;  // degenerate under the distortion map (e.g. x = 0)
    }
    generator = candidate;
    found = true;
  }
  if (!found) throw SearchExhausted("setup: no non-degenerate generator found");

  Bignum s = rng.uniform_range(Bignum(1UL), m->q - 1UL);
  Point<Fp> p_pub = mul_to_affine(s, generator);

  SystemParams params{m, generator, p_pub, zeta, kHashSuiteSha256AesGcm, {}};
  params.fingerprint = fingerprint_of(params.encode());
  return {std::move(params), MasterKey{std::move(s)}};
}

Point<Fp> derive_public_key(const SystemParams& params, const std::string& identity) {
  std::string id = normalize_identity(identity);
  return hash_to_point(as_span(id), params.modulus);
}

IdentityPrivateKey extract(const SystemParams& params, const MasterKey& master,
                           const std::string& identity) {
  std::string id = normalize_identity(identity);
  Point<Fp> q_id = hash_to_point(as_span(id), params.modulus);
  return IdentityPrivateKey{id, mul_to_affine(master.s, q_id)};
}

bool verify_private_key(const SystemParams& params, const IdentityPrivateKey& key) {
  if (key.s_id.is_infinity()) return false;
  Point<Fp> q_id = derive_public_key(params, key.identity);
  PairingValue lhs = tate_pairing(key.s_id, params.generator, params.zeta);
  PairingValue rhs = tate_pairing(q_id, params.public_point, params.zeta);
  return lhs == rhs;
}

std::array<std::uint8_t, kCekLen> h2_mask(const Fp2& pairing_value) {
  return kdf32("IBC-H2", pairing_value.to_bytes());
}

namespace {

std::vector<std::uint8_t> ciphertext_aad(const IbeCiphertext& ct,
                                         std::span<const std::uint8_t> u_bytes) {
  std::vector<std::uint8_t> aad = {0x01};
  wire::put_bytes(aad, ct.fingerprint);
  wire::put_bytes(aad, ct.nonce);
  wire::put_bytes(aad, u_bytes);
  wire::put_bytes(aad, ct.v);
  return aad;
}

}  // namespace

IbeCiphertext encrypt(const SystemParams& params, const std::string& recipient,
                      std::span<const std::uint8_t> message, RandomSource& rng) {
  if (message.size() > 0xFFFFFFFFull) throw Error("encrypt: message too long");
  Point<Fp> q_id = derive_public_key(params, recipient);

  std::array<std::uint8_t, kAeadNonceLen> nonce{};
  rng.fill(nonce);
  std::array<std::uint8_t, kCekLen> cek{};
  rng.fill(cek);

  Bignum r = rng.uniform_range(Bignum(1UL), params.modulus->q - 1UL);
  Point<Fp> u = mul_to_affine(r, params.generator);

  PairingValue g = tate_pairing(q_id, params.public_point, params.zeta);
  auto mask = h2_mask(g.pow(r).value());
  std::array<std::uint8_t, kCekLen> v{};
  for (std::size_t i = 0; i < kCekLen; ++i) v[i] = cek[i] ^ mask[i];

  IbeCiphertext ct{params.fingerprint, nonce, std::move(u), v, {}};
  ct.w = aead_seal(cek, ct.nonce, ciphertext_aad(ct, encode_point(ct.u)), message);
  return ct;
}

std::vector<std::uint8_t> decrypt(const SystemParams& params,
                                  const IdentityPrivateKey& key,
                                  const IbeCiphertext& ct) {
  if (ct.fingerprint != params.fingerprint) {
    throw MalformedCiphertext("ciphertext for a different parameter set");
  }
  if (ct.u.is_infinity() || !on_curve(ct.u)) {
    throw MalformedCiphertext("U invalid");
  }
  if (!mul_to_affine(params.modulus->q, ct.u).is_infinity()) {
    throw MalformedCiphertext("U not in the order-q subgroup");
  }
  PairingValue g = tate_pairing(key.s_id, ct.u, params.zeta);
  auto mask = h2_mask(g.value());
  std::array<std::uint8_t, kCekLen> cek{};
  for (std::size_t i = 0; i < kCekLen; ++i) cek[i] = ct.v[i] ^ mask[i];

  auto opened = aead_open(cek, ct.nonce, ciphertext_aad(ct, encode_point(ct.u)), ct.w);
  if (!opened) throw AuthenticationFailure("payload tag rejected");
  return std::move(*opened);
}

// ---------------------------------------------------------------------------
// Serialization

std::vector<std::uint8_t> IbeCiphertext::encode() const {
  std::vector<std::uint8_t> out = {0x01};
  wire::put_bytes(out, fingerprint);
  wire::put_bytes(out, nonce);
  wire::put_bytes(out, encode_point(u));
  wire::put_bytes(out, v);
  wire::put_u32(out, static_cast<std::uint32_t>(w.size()));
  wire::put_bytes(out, w);
  return out;
}

IbeCiphertext IbeCiphertext::decode(std::span<const std::uint8_t> blob,
                                    const SystemParams& params) {
  try {
    wire::Reader r(blob);
    if (r.u8() != 0x01) throw MalformedCiphertext("unsupported version");
    ParamsFingerprint fingerprint{};
    auto fp = r.bytes(kFingerprintLen);
    std::memcpy(fingerprint.data(), fp.data(), fp.size());
    std::array<std::uint8_t, kAeadNonceLen> nonce{};
    auto nb = r.bytes(kAeadNonceLen);
    std::memcpy(nonce.data(), nb.data(), nb.size());
    std::uint8_t tag = r.u8();
    std::size_t point_len = tag == 0x00   ? 0
                            : tag == 0x04 ? 2 * params.modulus->byte_width()
                                          : params.modulus->byte_width();
    std::vector<std::uint8_t> point_bytes = {tag};
    auto rest = r.bytes(point_len);
    point_bytes.insert(point_bytes.end(), rest.begin(), rest.end());
    Point<Fp> u = decode_point(point_bytes, params.modulus);
    std::array<std::uint8_t, kCekLen> v{};
    auto vb = r.bytes(kCekLen);
    std::memcpy(v.data(), vb.data(), vb.size());
    std::uint32_t wlen = r.u32();
    if (wlen != r.remaining()) throw MalformedCiphertext("payload length mismatch");
    auto w = r.bytes(wlen);
    r.expect_end();
    return IbeCiphertext{fingerprint, nonce, std::move(u),
                         v, std::vector<std::uint8_t>(w.begin(), w.end())};
  } catch (const MalformedEncoding& e) {
    throw MalformedCiphertext(e.what());
  }
}

std::vector<std::uint8_t> IdentityPrivateKey::encode(const SystemParams& params) const {
  std::vector<std::uint8_t> out = {'I', 'B', 'C', 'K', 0x01};
  wire::put_bytes(out, params.fingerprint);
  wire::put_lp_str(out, identity);
  wire::put_lp(out, encode_point(s_id));
  return out;
}

IdentityPrivateKey IdentityPrivateKey::decode(std::span<const std::uint8_t> blob,
                                              const SystemParams& params) {
  wire::Reader r(blob);
  r.expect_magic("IBCK");
  if (r.u8() != 0x01) throw MalformedEncoding("key: unsupported version");
  auto fp = r.bytes(kFingerprintLen);
  ParamsFingerprint have{};
  std::memcpy(have.data(), fp.data(), fp.size());
  if (have != params.fingerprint) {
    throw MalformedEncoding("key: wrong parameter set");
  }
  std::string id = r.lp_str();
  Point<Fp> s_id = decode_point(r.lp(), params.modulus);
  r.expect_end();
  return IdentityPrivateKey{normalize_identity(id), s_id};
}

}  // namespace ibc
