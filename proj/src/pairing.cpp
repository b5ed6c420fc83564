// SPDX-License-Identifier: Apache-2.0
#include "ibc/pairing.hpp"

#include <algorithm>

namespace ibc {

namespace {

struct LadderStep {
  Fp lambda;
  Point<Fp> next;
};

// Tangent at T (T affine, y ≠ 0): λ = 3x²/(2y), 2T = (λ²−2x, λ(x−x₃)−y).
LadderStep tangent_step(const Point<Fp>& t) {
  const Fp& x = t.x();
  const Fp& y = t.y();
  Fp x2 = x.square();
  Fp lambda = (x2 + x2 + x2) * (y + y).inv();
  Fp x3 = lambda.square() - x - x;
  Fp y3 = lambda * (x - x3) - y;
  return {lambda, Point<Fp>::affine(std::move(x3), std::move(y3))};
}

// Chord through distinct-x points T and P.
LadderStep chord_step(const Point<Fp>& t, const Point<Fp>& p) {
  Fp lambda = (p.y() - t.y()) * (p.x() - t.x()).inv();
  Fp x3 = lambda.square() - t.x() - p.x();
  Fp y3 = lambda * (t.x() - x3) - t.y();
  return {lambda, Point<Fp>::affine(std::move(x3), std::move(y3))};
}

// Walks the double-and-add ladder of q over P, recording one line per step.
std::vector<MillerStep> build_ladder(const Point<Fp>& p) {
  const ModulusPtr& m = p.modulus();
  const Bignum& q = m->q;
  std::vector<MillerStep> steps;
  steps.reserve(q.bit_length() * 2);
  Point<Fp> t = p;
  for (std::size_t i = q.bit_length() - 1; i > 0; --i) {
    if (t.is_infinity() || t.y().is_zero()) {
      throw Error("miller: ladder left the odd-order subgroup (is ord(P) = q?)");
    }
    LadderStep d = tangent_step(t);
    steps.push_back({MillerStep::Kind::Double, d.lambda, t.x(), t.y(),
                     d.next.is_infinity() ? std::nullopt : std::optional<Fp>(d.next.x())});
    t = d.next;
    if (q.bit(i - 1)) {
      if (t.is_infinity()) throw Error("miller: unexpected infinity before addition");
      if (t.x() == p.x()) {
        if (t.y() == p.y()) {
          // T = P mid-ladder cannot happen for ord(P) = q; fold in defensively.
          LadderStep a = tangent_step(t);
          steps.push_back({MillerStep::Kind::Add, a.lambda, t.x(), t.y(),
                           a.next.is_infinity() ? std::nullopt
                                                : std::optional<Fp>(a.next.x())});
          t = a.next;
        } else {
          // T = −P: vertical line, lands on infinity (the q-th step).
          steps.push_back({MillerStep::Kind::Vertical, Fp::zero(m), t.x(),
                           Fp::zero(m), std::nullopt});
          t = Point<Fp>::infinity(m);
        }
      } else {
        LadderStep a = chord_step(t, p);
        steps.push_back({MillerStep::Kind::Add, a.lambda, t.x(), t.y(),
                         a.next.is_infinity() ? std::nullopt
                                              : std::optional<Fp>(a.next.x())});
        t = a.next;
      }
    }
  }
  if (!t.is_infinity()) {
    throw Error("miller: ladder did not close at infinity (is ord(P) = q?)");
  }
  return steps;
}

Fp2 line_value(const MillerStep& s, const Fp2& xq, const Fp2& yq) {
  // y − y_T − λ(x − x_T), evaluated at Q
  return (yq - Fp2::lift(s.anchor_y)) - (xq - Fp2::lift(s.anchor_x)).scale(s.lambda);
}

Fp2 eval_steps(const std::vector<MillerStep>& steps, const Fp2& xq, const Fp2& yq) {
  const ModulusPtr& m = xq.modulus();
  Fp2 num = Fp2::one(m);
  Fp2 den = Fp2::one(m);
  for (const MillerStep& s : steps) {
    switch (s.kind) {
      case MillerStep::Kind::Double: {
        Fp2 l = line_value(s, xq, yq);
        if (l.is_zero()) throw ZeroEvaluation("line through 2T hits Q");
        num = num.square() * l;
        den = den.square();
        if (s.vertical_x) {
          Fp2 v = xq - Fp2::lift(*s.vertical_x);
          if (v.is_zero()) throw ZeroEvaluation("vertical at 2T hits Q");
          den = den * v;
        }
        break;
      }
      case MillerStep::Kind::Add: {
        Fp2 l = line_value(s, xq, yq);
        if (l.is_zero()) throw ZeroEvaluation("chord through T, P hits Q");
        num = num * l;
        if (s.vertical_x) {
          Fp2 v = xq - Fp2::lift(*s.vertical_x);
          if (v.is_zero()) throw ZeroEvaluation("vertical at T+P hits Q");
          den = den * v;
        }
        break;
      }
      case MillerStep::Kind::Vertical: {
        Fp2 l = xq - Fp2::lift(s.anchor_x);
        if (l.is_zero()) throw ZeroEvaluation("final vertical hits Q");
        num = num * l;
        break;
      }
    }
  }
  return num * den.inv();
}

// Inversion-free Jacobian walk: every line/vertical is carried as an exact
// numerator/denominator pair, so the final quotient equals the affine value
// bit-for-bit (the scale factors cancel exactly, not merely up to q-th powers).
Fp2 miller_jacobian(const Point<Fp>& p, const Fp2& xq, const Fp2& yq) {
  const ModulusPtr& m = p.modulus();
  const Bignum& q = m->q;
  Fp2 num = Fp2::one(m);
  Fp2 den = Fp2::one(m);
  Point<Fp> t = to_jacobian(p);
  const Fp& px = p.x();
  const Fp& py = p.y();

  auto vertical_at = [&](const Point<Fp>& r) -> std::optional<std::pair<Fp2, Fp>> {
    if (r.is_infinity()) return std::nullopt;
    Fp z2 = r.z().square();
    Fp2 vnum = xq.scale(z2) - Fp2::lift(r.x());
    if (vnum.is_zero()) throw ZeroEvaluation("vertical hits Q");
    return std::make_pair(std::move(vnum), std::move(z2));
  };

  auto apply = [&](bool squared, const Fp2& lnum, const Fp& lden,
                   const std::optional<std::pair<Fp2, Fp>>& v) {
    if (lnum.is_zero()) throw ZeroEvaluation("line hits Q");
    if (squared) {
      num = num.square();
      den = den.square();
    }
    num = num * lnum;
    den = den.scale(lden);
    if (v) {
      num = num.scale(v->second);
      den = den * v->first;
    }
  };

  for (std::size_t i = q.bit_length() - 1; i > 0; --i) {
    if (t.is_infinity() || t.y().is_zero()) {
      throw Error("miller: ladder left the odd-order subgroup (is ord(P) = q?)");
    }
    {
      // Tangent at T = (X, Y, Z): λ = 3X²/(2YZ); anchor (X/Z², Y/Z³).
      const Fp& X = t.x();
      const Fp& Y = t.y();
      const Fp& Z = t.z();
      Fp y2 = Y + Y;
      Fp z2 = Z.square();
      Fp z3 = z2 * Z;
      Fp x2 = X.square();
      Fp three_x2 = x2 + x2 + x2;
      // 2Y(Z³·yQ − Y) − 3X²(Z²·xQ − X), over the common denominator 2YZ³
      Fp2 lnum = (yq.scale(z3) - Fp2::lift(Y)).scale(y2) -
                 (xq.scale(z2) - Fp2::lift(X)).scale(three_x2);
      Fp lden = y2 * z3;
      Point<Fp> t2 = detail::jacobian_double(t);
      apply(true, lnum, lden, vertical_at(t2));
      t = t2;
    }
    if (q.bit(i - 1)) {
      if (t.is_infinity()) throw Error("miller: unexpected infinity before addition");
      const Fp& X = t.x();
      const Fp& Y = t.y();
      const Fp& Z = t.z();
      Fp z2 = Z.square();
      Fp z3 = z2 * Z;
      Fp dx = px * z2 - X;
      Fp dy = py * z3 - Y;
      if (dx.is_zero() && !dy.is_zero()) {
        // T = −P: vertical through P, exact affine anchor.
        Fp2 l = xq - Fp2::lift(px);
        if (l.is_zero()) throw ZeroEvaluation("final vertical hits Q");
        num = num * l;
        t = to_jacobian(Point<Fp>::infinity(m));
      } else if (dx.is_zero()) {
        // T = P (defensive; unreachable for ord(P) = q): tangent line at P.
        Fp y2a = py + py;
        Fp px2 = px.square();
        Fp three_px2 = px2 + px2 + px2;
        Fp2 lnum = (yq - Fp2::lift(py)).scale(y2a) - (xq - Fp2::lift(px)).scale(three_px2);
        Point<Fp> t2 = detail::jacobian_add(t, to_jacobian(p));
        apply(false, lnum, y2a, vertical_at(t2));
        t = t2;
      } else {
        // Chord through T and P, anchored at the exact affine P:
        // λ = (py·Z³ − Y) / (Z(px·Z² − X))
        Fp lden = Z * dx;
        Fp2 lnum = (yq - Fp2::lift(py)).scale(lden) - (xq - Fp2::lift(px)).scale(dy);
        Point<Fp> t2 = detail::jacobian_add(t, to_jacobian(p));
        apply(false, lnum, lden, vertical_at(t2));
        t = t2;
      }
    }
  }
  if (!t.is_infinity()) {
    throw Error("miller: ladder did not close at infinity (is ord(P) = q?)");
  }
  return num * den.inv();
}

}  // namespace

std::size_t PairingPrecomp::doubling_count() const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [](const MillerStep& s) {
        return s.kind == MillerStep::Kind::Double;
      }));
}

std::size_t PairingPrecomp::addition_count() const {
  return steps.size() - doubling_count();
}

Fp2 miller_loop(const Point<Fp>& p, const Point<Fp2>& q, MillerPath path) {
  if (p.is_infinity()) throw Error("miller: P must be a point of order q, not infinity");
  if (q.is_infinity()) throw Error("miller: Q must not be infinity");
  if (!(p.modulus()->p == q.modulus()->p)) throw ParamMismatch("miller: mixed moduli");
  Point<Fp> pa = to_affine(p);
  Point<Fp2> qa = to_affine(q);
  if (path == MillerPath::Jacobian) return miller_jacobian(pa, qa.x(), qa.y());
  return eval_steps(build_ladder(pa), qa.x(), qa.y());
}

PairingPrecomp precompute(const Point<Fp>& p) {
  if (p.is_infinity()) throw Error("precompute: P must have order q");
  Point<Fp> pa = to_affine(p);
  PairingPrecomp pre{pa, build_ladder(pa)};
  return pre;
}

Fp2 miller_replay(const PairingPrecomp& pre, const Point<Fp2>& q) {
  if (q.is_infinity()) throw Error("miller: Q must not be infinity");
  Point<Fp2> qa = to_affine(q);
  return eval_steps(pre.steps, qa.x(), qa.y());
}

PairingValue final_exponentiation(const Fp2& f, const PrimeModulus& m) {
  if (f.is_zero()) throw DivisionByZero("final exponentiation of zero");
  Fp2 u = f.conj() * f.inv();     // f^(p−1)
  return PairingValue(u.pow(m.cofactor));  // then ^(p+1)/q
}

namespace {

PairingValue pairing_attempt(const Point<Fp>& pa, const Point<Fp>& q, const Fp2& zeta,
                             const PairingPrecomp* pre) {
  Point<Fp2> phi_q = apply_distortion(zeta, q);
  Fp2 f = pre != nullptr ? miller_replay(*pre, phi_q)
                         : miller_loop(pa, phi_q, MillerPath::Affine);
  return final_exponentiation(f, *pa.modulus());
}

}  // namespace

PairingValue tate_pairing(const Point<Fp>& p, const Point<Fp>& q, const Fp2& zeta,
                          const PairingPrecomp* pre) {
  if (p.is_infinity()) throw Error("pairing: P must have order q, not infinity");
  detail::check_same_group(p, q);
  const ModulusPtr& m = p.modulus();
  if (q.is_infinity()) return PairingValue::one(m);
  Point<Fp> pa = to_affine(p);
  Point<Fp> qa = to_affine(q);
  try {
    return pairing_attempt(pa, qa, zeta, pre);
  } catch (const ZeroEvaluation&) {
    // Degenerate argument: shift Q by multiples of P and divide the shift
    // back out — ê(P, Q) = ê(P, Q + kP)·ê(P, kP)⁻¹.
    Point<Fp> shifted = qa;
    Point<Fp> kp = Point<Fp>::infinity(m);
    for (int k = 1; k <= 8; ++k) {
      shifted = to_affine(point_add(shifted, pa));
      kp = to_affine(point_add(kp, pa));
      if (kp.is_infinity()) continue;
      try {
        PairingValue divisor = pairing_attempt(pa, kp, zeta, pre);
        if (shifted.is_infinity()) return divisor.inverse();
        PairingValue value = pairing_attempt(pa, shifted, zeta, pre);
        return value * divisor.inverse();
      } catch (const ZeroEvaluation&) {
        continue;
      }
    }
    throw;
  }
}

}  // namespace ibc
