#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "edpadic/rational_series.hpp"
#include "edpadic/ring.hpp"

namespace edpadic {

/// y^2 = x^3 + a x + b with 4a^3 + 27b^2 a unit.
class ShortWCurve {
 public:
  /// Throws Singular if the discriminant is not a unit, ContextMismatch if a, b differ.
  ShortWCurve(RingElement a, RingElement b);

  const RingContext& context() const noexcept { return a_.context(); }
  const RingElement& a() const noexcept { return a_; }
  const RingElement& b() const noexcept { return b_; }
  RingElement g2() const { return a_ * -4; }
  RingElement g3() const { return b_ * -4; }
  RingElement rhs(const RingElement& x) const { return (x * x + a_) * x + b_; }

  ShortWCurve reduced() const;
  std::string to_string() const;

 private:
  RingElement a_;
  RingElement b_;
};

/// y^2 = x^3 + a' x^2 + b' x with b'(a'^2 - 4b') a unit.
class QuadWCurve {
 public:
  QuadWCurve(RingElement aprime, RingElement bprime);

  const RingContext& context() const noexcept { return ap_.context(); }
  const RingElement& aprime() const noexcept { return ap_; }
  const RingElement& bprime() const noexcept { return bp_; }
  RingElement rhs(const RingElement& x) const { return ((x + ap_) * x + bp_) * x; }

  /// The short form reached by x = xbar - a'/3:
  /// a = b' - a'^2/3, b = a'(2a'^2 - 9b')/27.
  ShortWCurve short_form() const;
  QuadWCurve reduced() const;

 private:
  RingElement ap_;
  RingElement bp_;
};

/// A projective point [Z : X : Y] with at least one unit coordinate, kept scaled
/// so that the first unit among Y, Z, X equals 1. Omega = [0 : 0 : 1].
class WPoint {
 public:
  /// Normalizes; throws NotOnCurve if no coordinate is a unit.
  WPoint(RingElement z, RingElement x, RingElement y);

  static WPoint infinity(const RingContext& ctx);
  static WPoint affine(RingElement x, RingElement y);

  const RingContext& context() const noexcept { return z_.context(); }
  const RingElement& Z() const noexcept { return z_; }
  const RingElement& X() const noexcept { return x_; }
  const RingElement& Y() const noexcept { return y_; }

  bool is_infinity() const noexcept { return z_.is_zero() && x_.is_zero(); }
  bool is_affine() const noexcept { return z_.is_unit(); }
  /// Affine coordinates; requires a unit Z.
  RingElement affine_x() const;
  RingElement affine_y() const;

  WPoint operator-() const { return WPoint(z_, x_, -y_); }

  /// Canonical form makes this projective equality.
  friend bool operator==(const WPoint& p, const WPoint& q) noexcept {
    return p.z_ == q.z_ && p.x_ == q.x_ && p.y_ == q.y_;
  }

  std::string to_string() const;

 private:
  RingElement z_;
  RingElement x_;
  RingElement y_;
};

/// Equal up to a unit scalar: every 2x2 minor vanishes.
bool projectively_equal(const WPoint& p, const WPoint& q);

/// "[Z:X:Y]" or the affine shorthand "(x, y)".
WPoint parse_wpoint(std::string_view text, const RingContext& ctx);

bool on_curve(const ShortWCurve& c, const WPoint& p);
bool on_curve(const QuadWCurve& c, const WPoint& p);

/// Group law valid over Z/p^k, including points near Omega.
WPoint add_points(const ShortWCurve& c, const WPoint& p, const WPoint& q);
WPoint add_points(const QuadWCurve& c, const WPoint& p, const WPoint& q);
WPoint scalar_mul(const ShortWCurve& c, std::int64_t n, const WPoint& p);
WPoint scalar_mul(const QuadWCurve& c, std::int64_t n, const WPoint& p);

/// Translation between the two shapes: chi(quad) adds (a'/3)Z to X.
WPoint chi(const QuadWCurve& c, const WPoint& p);
WPoint chi_inv(const QuadWCurve& c, const WPoint& p);

/// Mod_W: coordinate-wise reduction.
WPoint reduce_mod_p(const WPoint& p);

/// A point over Z/p^k above a point of the reduced curve. Keeps the least lift
/// of x and Hensel-lifts y; when ybar = 0 it keeps y = 0 and lifts x instead.
WPoint hensel_lift(const ShortWCurve& c, const WPoint& pbar);

/// |E(F_p)| by exhaustive scan, Omega included. Throws TooLarge for p > 10^4.
std::uint64_t count_points_fp(const ShortWCurve& c);
std::uint64_t count_points_fp(const QuadWCurve& c);
bool is_anomalous(const ShortWCurve& c);

/// Exp_W and Log_W on the kernel of reduction. Tables are built once per curve.
class WeierstrassExp {
 public:
  explicit WeierstrassExp(const ShortWCurve& c);

  const ShortWCurve& curve() const noexcept { return curve_; }

  /// [z^3 : z^3 wp(z) : z^3 wp'(z)/2]; throws BadValuation if v(z) = 0.
  WPoint exp(const RingElement& z) const;
  /// {z^2 wp(z), z^3 wp'(z)/2} for v(z) >= 1; exp(z) = [z^3 : z A : B].
  std::vector<RingElement> cleared(const RingElement& z) const;
  /// The z with exp(z) = p; throws NotInKernel.
  RingElement log(const WPoint& p) const;

 private:
  ShortWCurve curve_;
  ScaledSeries z2_wp_;      // z^2 wp(z)
  ScaledSeries z3_half_wpp_;  // z^3 wp'(z) / 2
  ScaledSeries log_;        // reversion of -2 wp / wp'
};

WPoint exp_w(const ShortWCurve& c, const RingElement& z);
RingElement log_w(const ShortWCurve& c, const WPoint& p);

bool in_kernel(const WPoint& p);

}  // namespace edpadic
