// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ibc/curve.hpp"
#include "ibc/field.hpp"

namespace ibc {

/// Reduced pairing output; lies in the order-q subgroup μ_q of F_p²*
/// (value^q = 1), which is inside the unitary subgroup, so inversion is
/// conjugation.
class PairingValue {
 public:
  explicit PairingValue(Fp2 v) : v_(std::move(v)) {}
  static PairingValue one(const ModulusPtr& m) { return PairingValue(Fp2::one(m)); }

  const Fp2& value() const { return v_; }
  bool is_one() const { return v_.is_one(); }

  PairingValue pow(const Bignum& e) const { return PairingValue(v_.pow(e)); }
  PairingValue inverse() const { return PairingValue(v_.conj()); }
  PairingValue operator*(const PairingValue& o) const { return PairingValue(v_ * o.v_); }
  bool operator==(const PairingValue& o) const { return v_ == o.v_; }
  bool operator!=(const PairingValue& o) const { return !(*this == o); }

 private:
  Fp2 v_;
};

/// One recorded Miller-ladder step: the line slope λ, the affine anchor point
/// the line passes through, and the x of the step's result point for the
/// vertical denominator (absent when the result is infinity).
struct MillerStep {
  enum class Kind : std::uint8_t { Double, Add, Vertical };
  Kind kind;
  Fp lambda;
  Fp anchor_x;
  Fp anchor_y;
  std::optional<Fp> vertical_x;
};

/// Precomputed line coefficients for a fixed first argument; replaying them
/// against any second argument reproduces the direct Miller loop bit-for-bit.
struct PairingPrecomp {
  Point<Fp> base;
  std::vector<MillerStep> steps;

  std::size_t doubling_count() const;
  std::size_t addition_count() const;
};

enum class MillerPath { Affine, Jacobian };

/// f_{q,P}(Q): P affine of order q over F_p, Q (≠ ∞) over F_p². The affine and
/// Jacobian paths return exactly the same field element.
Fp2 miller_loop(const Point<Fp>& p, const Point<Fp2>& q,
                MillerPath path = MillerPath::Affine);

PairingPrecomp precompute(const Point<Fp>& p);
Fp2 miller_replay(const PairingPrecomp& pre, const Point<Fp2>& q);

/// f^((p²−1)/q), factored as (f^(p−1))^((p+1)/q) with f^(p−1) = conj(f)/f.
PairingValue final_exponentiation(const Fp2& f, const PrimeModulus& m);

/// Reduced modified Tate pairing ê(P, Q) = final_exp(f_{q,P}(φ(Q))).
/// On a degenerate zero line evaluation, retries with Q + kP and divides the
/// ê(P, kP) factor back out.
PairingValue tate_pairing(const Point<Fp>& p, const Point<Fp>& q, const Fp2& zeta,
                          const PairingPrecomp* pre = nullptr);

}  // namespace ibc
