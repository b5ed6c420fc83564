// SPDX-License-Identifier: Apache-2.0
#include "ibc/curve.hpp"

#include "ibc/hash.hpp"

namespace ibc {

Fp2 compute_zeta(const ModulusPtr& m) {
  auto sqrt3 = fp_sqrt(Fp(3UL, m));
  if (!sqrt3) throw Error("zeta: 3 is not a QR (modulus violates p = 11 mod 12)");
  Fp half = Fp(2UL, m).inv();
  Fp2 zeta(-half, *sqrt3 * half);
  if (!(zeta.square() + zeta + Fp2::one(m)).is_zero()) {
    throw Error("zeta: not a primitive cube root of unity");
  }
  return zeta;
}

Point<Fp2> lift_to_fp2(const Point<Fp>& p) {
  switch (p.form()) {
    case PointForm::Infinity:
      return Point<Fp2>::infinity(p.modulus());
    case PointForm::Affine:
      return Point<Fp2>::affine(Fp2::lift(p.x()), Fp2::lift(p.y()));
    case PointForm::Jacobian:
      return Point<Fp2>::jacobian(Fp2::lift(p.x()), Fp2::lift(p.y()),
                                  Fp2::lift(p.z()));
  }
  throw Error("unreachable");
}

Point<Fp2> apply_distortion(const Fp2& zeta, const Point<Fp>& p) {
  if (p.is_infinity()) return Point<Fp2>::infinity(p.modulus());
  Point<Fp> a = to_affine(p);
  return Point<Fp2>::affine(zeta.scale(a.x()), Fp2::lift(a.y()));
}

Point<Fp> hash_to_point(std::span<const std::uint8_t> identity, const ModulusPtr& m) {
  if (identity.empty()) throw InvalidIdentity("empty identity");
  std::vector<std::uint8_t> msg(identity.begin(), identity.end());
  msg.push_back(0x00);
  for (unsigned counter = 0; counter < 256; ++counter) {
    msg.back() = static_cast<std::uint8_t>(counter);
    auto wide = kdf("IBC-H1", msg, m->byte_width() + 16);
    Fp y(Bignum::from_bytes_be(wide), m);
    Fp x = fp_cbrt(y.square() - Fp::one(m));
    Point<Fp> candidate = Point<Fp>::affine(std::move(x), std::move(y));
    Point<Fp> out = mul_to_affine(m->cofactor, candidate);
    if (!out.is_infinity()) return out;
  }
  throw HashToPointFailure("256 counter retries exhausted");
}

Point<Fp> random_curve_point(const ModulusPtr& m, RandomSource& rng) {
  Fp y(rng.uniform_below(m->p), m);
  Fp x = fp_cbrt(y.square() - Fp::one(m));
  return Point<Fp>::affine(std::move(x), std::move(y));
}

std::vector<std::uint8_t> encode_point(const Point<Fp>& p, bool compressed) {
  if (p.is_infinity()) return {0x00};
  Point<Fp> a = to_affine(p);
  std::vector<std::uint8_t> out;
  if (compressed) {
    out.push_back(a.y().is_odd() ? 0x03 : 0x02);
    auto xb = a.x().to_bytes();
    out.insert(out.end(), xb.begin(), xb.end());
  } else {
    out.push_back(0x04);
    auto xb = a.x().to_bytes();
    auto yb = a.y().to_bytes();
    out.insert(out.end(), xb.begin(), xb.end());
    out.insert(out.end(), yb.begin(), yb.end());
  }
  return out;
}

Point<Fp> decode_point(std::span<const std::uint8_t> bytes, const ModulusPtr& m) {
  if (bytes.empty()) throw MalformedEncoding("point: empty");
  std::size_t w = m->byte_width();
  switch (bytes[0]) {
    case 0x00:
      if (bytes.size() != 1) throw MalformedEncoding("point: bad infinity length");
      return Point<Fp>::infinity(m);
    case 0x02:
    case 0x03: {
      if (bytes.size() != 1 + w) throw MalformedEncoding("point: bad compressed length");
      Fp x = Fp::from_bytes(bytes.subspan(1), m);
      auto y = fp_sqrt(x.square() * x + Fp::one(m));
      if (!y) throw MalformedEncoding("point: x not on curve");
      bool want_odd = bytes[0] == 0x03;
      Fp yy = y->is_odd() == want_odd ? *y : -*y;
      if (yy.is_odd() != want_odd) throw MalformedEncoding("point: parity unsatisfiable");
      return Point<Fp>::affine(std::move(x), std::move(yy));
    }
    case 0x04: {
      if (bytes.size() != 1 + 2 * w) throw MalformedEncoding("point: bad uncompressed length");
      Fp x = Fp::from_bytes(bytes.subspan(1, w), m);
      Fp y = Fp::from_bytes(bytes.subspan(1 + w), m);
      Point<Fp> p = Point<Fp>::affine(std::move(x), std::move(y));
      if (!on_curve(p)) throw MalformedEncoding("point: not on curve");
      return p;
    }
    default:
      throw MalformedEncoding("point: unknown tag");
  }
}

}  // namespace ibc
