#pragma once

#include <string>

#include "edpadic/edwards.hpp"
#include "edpadic/weierstrass.hpp"

namespace edpadic {

/// The birational equivalence between x^2 + y^2 = 1 + d x^2 y^2 and
/// y^2 = x^3 + a'x^2 + b'x, with
///   y1^2 = 4 x1^3 / (1 - d),  a' = 2 x1 (1 + d) / (1 - d),  b' = x1^2,
/// and the short form y^2 = x^3 + a x + b reached by x -> x + a'/3.
class Bridge {
 public:
  const RingContext& context() const noexcept { return d_.context(); }
  const RingElement& d() const noexcept { return d_; }
  const RingElement& x1() const noexcept { return x1_; }
  const RingElement& y1() const noexcept { return y1_; }
  const RingElement& aprime() const noexcept { return quad_.aprime(); }
  const RingElement& bprime() const noexcept { return quad_.bprime(); }
  const RingElement& a() const noexcept { return short_.a(); }
  const RingElement& b() const noexcept { return short_.b(); }

  const EdwardsCurve& edwards() const noexcept { return edwards_; }
  const QuadWCurve& quad() const noexcept { return quad_; }
  const ShortWCurve& short_curve() const noexcept { return short_; }

  /// The same construction over F_p.
  Bridge reduced() const;

  /// {"p", "k", "d", "x1", "y1", "aprime", "bprime", "a", "b"} as decimal residues.
  std::string to_json() const;

 private:
  friend Bridge derive_bridge(const RingElement& d, const RingElement& x1);
  Bridge(EdwardsCurve e, RingElement d, RingElement x1, RingElement y1, QuadWCurve q)
      : edwards_(std::move(e)), d_(std::move(d)), x1_(std::move(x1)), y1_(std::move(y1)), quad_(q),
        short_(q.short_form()) {}

  EdwardsCurve edwards_;
  RingElement d_, x1_, y1_;
  QuadWCurve quad_;
  ShortWCurve short_;
};

/// Throws DSquare, NonUnit or ClassMismatch when (d, x1) is not admissible.
Bridge derive_bridge(const RingElement& d, const RingElement& x1);

/// The least x1 in [1, p) admissible for d; x1 = 1 - d always qualifies.
RingElement default_x1(const RingElement& d);

/// Edwards -> quadratic Weierstrass. Total: (0, 1) goes to Omega and
/// (0, -1) to (0, 0).
WPoint alpha(const Bridge& b, const EdwardsPoint& p);
/// Quadratic Weierstrass -> Edwards, inverse of alpha. Throws ExceptionalFiber
/// for points that only exist when d is a square.
EdwardsPoint beta(const Bridge& b, const WPoint& p);

/// Quadratic form -> short form and back.
WPoint chi(const Bridge& b, const WPoint& p);
WPoint chi_inv(const Bridge& b, const WPoint& p);

}  // namespace edpadic
