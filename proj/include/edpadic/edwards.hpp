#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edpadic/ring.hpp"

namespace edpadic {

/// x^2 + y^2 = 1 + d x^2 y^2 over Z/p^k with d a nonresidue mod p.
class EdwardsCurve {
 public:
  /// Throws Singular unless d(d-1) is a unit and DSquare if d is a square mod p.
  explicit EdwardsCurve(RingElement d);

  const RingContext& context() const noexcept { return d_.context(); }
  const RingElement& d() const noexcept { return d_; }
  EdwardsCurve reduced() const { return EdwardsCurve(reduce_to(d_, context().residue_field())); }

 private:
  RingElement d_;
};

struct EdwardsPoint {
  RingElement x;
  RingElement y;

  const RingContext& context() const noexcept { return x.context(); }

  static EdwardsPoint neutral(const RingContext& ctx) { return {RingElement::zero(ctx), RingElement::one(ctx)}; }
  /// O' = (0, -1), H = (1, 0), H' = (-1, 0).
  static EdwardsPoint o_prime(const RingContext& ctx) { return {RingElement::zero(ctx), RingElement(ctx, -1)}; }
  static EdwardsPoint h(const RingContext& ctx) { return {RingElement::one(ctx), RingElement::zero(ctx)}; }
  static EdwardsPoint h_prime(const RingContext& ctx) { return {RingElement(ctx, -1), RingElement::zero(ctx)}; }

  bool is_neutral() const noexcept { return x.is_zero() && y.residue() == 1; }

  friend bool operator==(const EdwardsPoint& a, const EdwardsPoint& b) noexcept { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const EdwardsPoint& a, const EdwardsPoint& b) noexcept {
    return std::pair(a.x.residue(), a.y.residue()) < std::pair(b.x.residue(), b.y.residue());
  }

  /// "(x, y)".
  std::string to_string() const;
};

EdwardsPoint parse_edwards_point(std::string_view text, const RingContext& ctx);

bool on_curve(const EdwardsCurve& e, const EdwardsPoint& p);

/// The unified addition law; throws NonUnitDenominator if a denominator is
/// not a unit, which a nonresidue d rules out.
EdwardsPoint edwards_add(const EdwardsCurve& e, const EdwardsPoint& p, const EdwardsPoint& q);
EdwardsPoint negate(const EdwardsPoint& p);
EdwardsPoint scalar_mul(const EdwardsCurve& e, std::int64_t n, const EdwardsPoint& p);

EdwardsPoint reduce_mod_p(const EdwardsPoint& p);

/// Number of affine points; TooLarge when p^k > 10^6.
std::uint64_t count_affine(const EdwardsCurve& e);
/// Every affine point, ordered by (x, y); same guard.
std::vector<EdwardsPoint> affine_points(const EdwardsCurve& e);

/// Canonical class of sum m_i P_i + t1 Omega1 + t2 Omega2: an affine point plus
/// parity bits for the two points at infinity. (1, 1) stands for
/// +Omega1 - Omega2.
struct DivisorClass {
  EdwardsPoint base;
  int eps1 = 0;
  int eps2 = 0;

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  /// "((x, y), eps1, eps2)".
  std::string to_string() const;
};

using AffineDivisor = std::vector<std::pair<EdwardsPoint, std::int64_t>>;

/// Throws NonzeroDegree unless the multiplicities sum to zero.
DivisorClass divisor_reduce(const EdwardsCurve& e, const AffineDivisor& affine, std::int64_t t1, std::int64_t t2);

}  // namespace edpadic
