// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ibc/field.hpp"

namespace ibc {

enum class PointForm { Infinity, Affine, Jacobian };

/// Point on E: y² = x³ + 1 over F_p or F_p² (F = Fp or Fp2), in affine or
/// Jacobian projective representation. Jacobian (X, Y, Z) maps to
/// (X/Z², Y/Z³); Z = 0 is the point at infinity, canonically (1, 1, 0).
template <class F>
class Point {
 public:
  static Point infinity(ModulusPtr m) { return Point(PointForm::Infinity, std::move(m)); }

  static Point affine(F x, F y) {
    Point p(PointForm::Affine, x.modulus());
    p.x_ = std::move(x);
    p.y_ = std::move(y);
    return p;
  }

  static Point jacobian(F x, F y, F z) {
    Point p(PointForm::Jacobian, x.modulus());
    p.x_ = std::move(x);
    p.y_ = std::move(y);
    p.z_ = std::move(z);
    return p;
  }

  PointForm form() const { return form_; }
  const ModulusPtr& modulus() const { return m_; }

  bool is_infinity() const {
    if (form_ == PointForm::Infinity) return true;
    return form_ == PointForm::Jacobian && z_->is_zero();
  }

  const F& x() const { return coord(x_); }
  const F& y() const { return coord(y_); }
  const F& z() const { return coord(z_); }

 private:
  Point(PointForm f, ModulusPtr m) : form_(f), m_(std::move(m)) {}
  static const F& coord(const std::optional<F>& c) {
    if (!c) throw Error("Point: coordinate not present in this form");
    return *c;
  }

  PointForm form_;
  ModulusPtr m_;
  std::optional<F> x_, y_, z_;
};

namespace detail {

template <class F>
void check_same_group(const Point<F>& a, const Point<F>& b) {
  if (a.modulus() == b.modulus()) return;
  if (a.modulus()->p == b.modulus()->p) return;
  throw ParamMismatch("points from different parameter sets");
}

}  // namespace detail

template <class F>
Point<F> to_affine(const Point<F>& p) {
  switch (p.form()) {
    case PointForm::Infinity:
      return p;
    case PointForm::Affine:
      return p;
    case PointForm::Jacobian: {
      if (p.z().is_zero()) return Point<F>::infinity(p.modulus());
      F zi = p.z().inv();
      F zi2 = zi.square();
      return Point<F>::affine(p.x() * zi2, p.y() * zi2 * zi);
    }
  }
  throw Error("unreachable");
}

template <class F>
Point<F> to_jacobian(const Point<F>& p) {
  switch (p.form()) {
    case PointForm::Infinity:
      return Point<F>::jacobian(F::one(p.modulus()), F::one(p.modulus()),
                                F::zero(p.modulus()));
    case PointForm::Affine:
      return Point<F>::jacobian(p.x(), p.y(), F::one(p.modulus()));
    case PointForm::Jacobian:
      return p;
  }
  throw Error("unreachable");
}

template <class F>
Point<F> point_negate(const Point<F>& p) {
  switch (p.form()) {
    case PointForm::Infinity:
      return p;
    case PointForm::Affine:
      return Point<F>::affine(p.x(), -p.y());
    case PointForm::Jacobian:
      return Point<F>::jacobian(p.x(), -p.y(), p.z());
  }
  throw Error("unreachable");
}

template <class F>
bool on_curve(const Point<F>& p) {
  switch (p.form()) {
    case PointForm::Infinity:
      return true;
    case PointForm::Affine: {
      F rhs = p.x().square() * p.x() + F::one(p.modulus());
      return p.y().square() == rhs;
    }
    case PointForm::Jacobian: {
      if (p.z().is_zero()) return true;
      // Y² = X³ + Z⁶
      F z2 = p.z().square();
      F z6 = z2.square() * z2;
      return p.y().square() == p.x().square() * p.x() + z6;
    }
  }
  throw Error("unreachable");
}

namespace detail {

template <class F>
Point<F> affine_add(const Point<F>& a, const Point<F>& b) {
  if (a.is_infinity()) return b;
  if (b.is_infinity()) return a;
  const ModulusPtr& m = a.modulus();
  const F &x1 = a.x(), &y1 = a.y(), &x2 = b.x(), &y2 = b.y();
  if (x1 == x2) {
    if ((y1 + y2).is_zero()) return Point<F>::infinity(m);
    // same point: tangent slope 3x²/(2y)
    F x1sq = x1.square();
    F lambda = (x1sq + x1sq + x1sq) * (y1 + y1).inv();
    F x3 = lambda.square() - x1 - x2;
    F y3 = lambda * (x1 - x3) - y1;
    return Point<F>::affine(std::move(x3), std::move(y3));
  }
  F lambda = (y2 - y1) * (x2 - x1).inv();
  F x3 = lambda.square() - x1 - x2;
  F y3 = lambda * (x1 - x3) - y1;
  return Point<F>::affine(std::move(x3), std::move(y3));
}

template <class F>
Point<F> jacobian_double(const Point<F>& p) {
  const ModulusPtr& m = p.modulus();
  if (p.is_infinity() || p.y().is_zero()) return to_jacobian(Point<F>::infinity(m));
  const F &X = p.x(), &Y = p.y(), &Z = p.z();
  F A = X.square();
  F B = Y.square();
  F C = B.square();
  F t = (X + B).square() - A - C;
  F D = t + t;
  F E = A + A + A;
  F Fq = E.square();
  F X3 = Fq - (D + D);
  F C8 = C + C;
  C8 = C8 + C8;
  C8 = C8 + C8;
  F Y3 = E * (D - X3) - C8;
  F Z3 = (Y + Y) * Z;
  return Point<F>::jacobian(std::move(X3), std::move(Y3), std::move(Z3));
}

template <class F>
Point<F> jacobian_add(const Point<F>& a, const Point<F>& b) {
  if (a.is_infinity()) return b;
  if (b.is_infinity()) return a;
  const F &X1 = a.x(), &Y1 = a.y(), &Z1 = a.z();
  const F &X2 = b.x(), &Y2 = b.y(), &Z2 = b.z();
  F Z1Z1 = Z1.square();
  F Z2Z2 = Z2.square();
  F U1 = X1 * Z2Z2;
  F U2 = X2 * Z1Z1;
  F S1 = Y1 * Z2 * Z2Z2;
  F S2 = Y2 * Z1 * Z1Z1;
  F H = U2 - U1;
  if (H.is_zero()) {
    if (S1 == S2) return jacobian_double(a);
    return to_jacobian(Point<F>::infinity(a.modulus()));
  }
  F H2 = H + H;
  F I = H2.square();
  F J = H * I;
  F r = (S2 - S1);
  r = r + r;
  F V = U1 * I;
  F X3 = r.square() - J - (V + V);
  F S1J = S1 * J;
  F Y3 = r * (V - X3) - (S1J + S1J);
  F Z3 = ((Z1 + Z2).square() - Z1Z1 - Z2Z2) * H;
  return Point<F>::jacobian(std::move(X3), std::move(Y3), std::move(Z3));
}

}  // namespace detail

/// Group law. Inputs in mixed forms are carried out in Jacobian coordinates
/// when either operand is Jacobian, otherwise in affine coordinates.
template <class F>
Point<F> point_add(const Point<F>& a, const Point<F>& b) {
  detail::check_same_group(a, b);
  if (a.form() == PointForm::Jacobian || b.form() == PointForm::Jacobian) {
    return detail::jacobian_add(to_jacobian(a), to_jacobian(b));
  }
  return detail::affine_add(a, b);
}

/// Left-to-right double-and-add; the ladder runs in the representation of P.
template <class F>
Point<F> scalar_mul(const Bignum& k, const Point<F>& p) {
  if (k.sign() < 0) throw Error("scalar_mul: negative scalar");
  const ModulusPtr& m = p.modulus();
  if (k.is_zero() || p.is_infinity()) {
    return p.form() == PointForm::Jacobian ? to_jacobian(Point<F>::infinity(m))
                                           : Point<F>::infinity(m);
  }
  if (p.form() == PointForm::Jacobian) {
    Point<F> acc = to_jacobian(Point<F>::infinity(m));
    for (std::size_t i = k.bit_length(); i > 0; --i) {
      acc = detail::jacobian_double(acc);
      if (k.bit(i - 1)) acc = detail::jacobian_add(acc, p);
    }
    return acc;
  }
  Point<F> base = to_affine(p);
  Point<F> acc = Point<F>::infinity(m);
  for (std::size_t i = k.bit_length(); i > 0; --i) {
    acc = detail::affine_add(acc, acc);
    if (k.bit(i - 1)) acc = detail::affine_add(acc, base);
  }
  return acc;
}

/// Scalar multiplication through the Jacobian ladder with a normalized result.
template <class F>
Point<F> mul_to_affine(const Bignum& k, const Point<F>& p) {
  return to_affine(scalar_mul(k, to_jacobian(p)));
}

/// Group-element equality (representation-independent).
template <class F>
bool operator==(const Point<F>& a, const Point<F>& b) {
  detail::check_same_group(a, b);
  Point<F> na = to_affine(a);
  Point<F> nb = to_affine(b);
  if (na.is_infinity() || nb.is_infinity()) {
    return na.is_infinity() == nb.is_infinity();
  }
  return na.x() == nb.x() && na.y() == nb.y();
}

template <class F>
bool operator!=(const Point<F>& a, const Point<F>& b) {
  return !(a == b);
}

/// Primitive cube root of unity ζ = (−1 + √3·i)/2 in F_p²; √3 exists in F_p
/// for every p ≡ 11 (mod 12).
Fp2 compute_zeta(const ModulusPtr& m);

/// Distortion map φ(x, y) = (ζx, y) from E(F_p) into E(F_p²).
Point<Fp2> apply_distortion(const Fp2& zeta, const Point<Fp>& p);

/// Embeds an E(F_p) point into E(F_p²) coordinates unchanged.
Point<Fp2> lift_to_fp2(const Point<Fp>& p);

/// Deterministic map from an identity string to a point of order exactly q:
/// y = H(identity || counter) mod p, x = cbrt(y² − 1), then cofactor-multiplied.
Point<Fp> hash_to_point(std::span<const std::uint8_t> identity, const ModulusPtr& m);

/// Uniform-ish curve point of unrestricted order (one x per y since cubing is
/// a bijection).
Point<Fp> random_curve_point(const ModulusPtr& m, RandomSource& rng);

/// Wire form: 0x00 infinity; 0x02/0x03 compressed (y parity); 0x04 uncompressed.
std::vector<std::uint8_t> encode_point(const Point<Fp>& p, bool compressed = true);
Point<Fp> decode_point(std::span<const std::uint8_t> bytes, const ModulusPtr& m);

}  // namespace ibc
