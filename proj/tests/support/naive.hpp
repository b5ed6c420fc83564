// SPDX-License-Identifier: Apache-2.0
//
// Test-only brute-force oracle over uint64 arithmetic for small primes.
// Independent of the library under test: no Bignum, LSB-first scalar ladder,
// textbook Miller loop with per-step division, final exponentiation by plain
// square-and-multiply.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace naive {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 addm(u64 a, u64 b, u64 p) { return (a + b) % p; }
inline u64 subm(u64 a, u64 b, u64 p) { return (a + p - b % p) % p; }
inline u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

inline u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e != 0) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

inline u64 invm(u64 a, u64 p) {
  long long t = 0, nt = 1;
  long long r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
  while (nr != 0) {
    long long qd = r / nr;
    t -= qd * nt;
    std::swap(t, nt);
    r -= qd * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::runtime_error("naive: not invertible");
  return static_cast<u64>((t % static_cast<long long>(p) + static_cast<long long>(p)) %
                          static_cast<long long>(p));
}

struct F2 {
  u64 a = 0, b = 0;  // a + b·i, i² = −1
};

inline bool operator==(F2 x, F2 y) { return x.a == y.a && x.b == y.b; }
inline F2 add(F2 x, F2 y, u64 p) { return {addm(x.a, y.a, p), addm(x.b, y.b, p)}; }
inline F2 sub(F2 x, F2 y, u64 p) { return {subm(x.a, y.a, p), subm(x.b, y.b, p)}; }
inline F2 mul(F2 x, F2 y, u64 p) {
  return {subm(mulm(x.a, y.a, p), mulm(x.b, y.b, p), p),
          addm(mulm(x.a, y.b, p), mulm(x.b, y.a, p), p)};
}
inline F2 inv(F2 x, u64 p) {
  u64 n = addm(mulm(x.a, x.a, p), mulm(x.b, x.b, p), p);
  u64 ni = invm(n, p);
  return {mulm(x.a, ni, p), mulm(subm(0, x.b, p), ni, p)};
}
inline F2 powf2(F2 x, u64 e, u64 p) {
  F2 r{1, 0};
  while (e != 0) {
    if (e & 1) r = mul(r, x, p);
    x = mul(x, x, p);
    e >>= 1;
  }
  return r;
}

struct Pt {
  bool inf = true;
  u64 x = 0, y = 0;
};

inline bool operator==(Pt a, Pt b) {
  if (a.inf || b.inf) return a.inf == b.inf;
  return a.x == b.x && a.y == b.y;
}

// Chord-and-tangent law on y² = x³ + 1.
inline Pt pt_add(Pt a, Pt b, u64 p) {
  if (a.inf) return b;
  if (b.inf) return a;
  u64 lam;
  if (a.x == b.x) {
    if (addm(a.y, b.y, p) == 0) return {true, 0, 0};
    lam = mulm(mulm(3, mulm(a.x, a.x, p), p), invm(mulm(2, a.y, p), p), p);
  } else {
    lam = mulm(subm(b.y, a.y, p), invm(subm(b.x, a.x, p), p), p);
  }
  u64 x3 = subm(subm(mulm(lam, lam, p), a.x, p), b.x, p);
  u64 y3 = subm(mulm(lam, subm(a.x, x3, p), p), a.y, p);
  return {false, x3, y3};
}

// LSB-first ladder (the library walks MSB-first).
inline Pt pt_mul(u64 k, Pt g, u64 p) {
  Pt r{true, 0, 0};
  while (k != 0) {
    if (k & 1) r = pt_add(r, g, p);
    g = pt_add(g, g, p);
    k >>= 1;
  }
  return r;
}

inline bool pt_on_curve(Pt a, u64 p) {
  if (a.inf) return true;
  return mulm(a.y, a.y, p) == addm(mulm(a.x, mulm(a.x, a.x, p), p), 1, p);
}

inline std::vector<Pt> enumerate_curve(u64 p) {
  std::vector<Pt> pts;
  pts.push_back({true, 0, 0});
  for (u64 x = 0; x < p; ++x) {
    for (u64 y = 0; y < p; ++y) {
      u64 rhs = addm(mulm(x, mulm(x, x, p), p), 1, p);
      if (mulm(y, y, p) == rhs) pts.push_back({false, x, y});
    }
  }
  return pts;
}

// The line through A and B (tangent when A = B, vertical when B = −A),
// normalized with y-coefficient 1 (or the vertical x − x_A), evaluated at Q.
inline F2 line_at(Pt a, Pt b, F2 qx, F2 qy, u64 p) {
  if (a.inf || b.inf) throw std::runtime_error("naive: line anchor at infinity");
  if (a.x == b.x && addm(a.y, b.y, p) == 0) {
    return sub(qx, {a.x, 0}, p);
  }
  u64 lam;
  if (a.x == b.x) {
    lam = mulm(mulm(3, mulm(a.x, a.x, p), p), invm(mulm(2, a.y, p), p), p);
  } else {
    lam = mulm(subm(b.y, a.y, p), invm(subm(b.x, a.x, p), p), p);
  }
  F2 dy = sub(qy, {a.y, 0}, p);
  F2 dx = sub(qx, {a.x, 0}, p);
  return sub(dy, mul({lam, 0}, dx, p), p);
}

// Textbook Miller loop: f ← f²·ℓ/v per doubling, f ← f·ℓ/v per addition,
// dividing eagerly at every step.
inline F2 miller(Pt base, F2 qx, F2 qy, u64 q, u64 p) {
  int top = 63;
  while (top >= 0 && ((q >> top) & 1) == 0) --top;
  F2 f{1, 0};
  Pt t = base;
  auto vertical = [&](Pt r) -> F2 {
    if (r.inf) return {1, 0};
    return sub(qx, {r.x, 0}, p);
  };
  auto nonzero = [](F2 v) { return v.a != 0 || v.b != 0; };
  for (int i = top - 1; i >= 0; --i) {
    Pt t2 = pt_add(t, t, p);
    F2 l = line_at(t, t, qx, qy, p);
    F2 v = vertical(t2);
    if (!nonzero(l) || !nonzero(v)) throw std::runtime_error("naive: zero evaluation");
    f = mul(mul(f, f, p), mul(l, inv(v, p), p), p);
    t = t2;
    if ((q >> i) & 1) {
      Pt t1 = pt_add(t, base, p);
      F2 l1 = line_at(t, base, qx, qy, p);
      F2 v1 = vertical(t1);
      if (!nonzero(l1) || !nonzero(v1)) throw std::runtime_error("naive: zero evaluation");
      f = mul(f, mul(l1, inv(v1, p), p), p);
      t = t1;
    }
  }
  if (!t.inf) throw std::runtime_error("naive: ladder did not close");
  return f;
}

// Reduced modified Tate pairing with the distortion map (x, y) → (ζx, y).
inline F2 tate(Pt base, Pt arg, F2 zeta, u64 q, u64 p) {
  if (arg.inf) return {1, 0};
  F2 qx = mul(zeta, {arg.x, 0}, p);
  F2 qy{arg.y, 0};
  F2 f = miller(base, qx, qy, q, p);
  u64 exponent = (p * p - 1) / q;
  return powf2(f, exponent, p);
}

}  // namespace naive
