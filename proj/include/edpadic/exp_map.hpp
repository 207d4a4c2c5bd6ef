#pragma once

#include "edpadic/bridge.hpp"
#include "edpadic/weierstrass.hpp"

namespace edpadic {

/// Exp_E, Log_E and Mod_E for one bridge. Series tables are built on
/// construction and shared by every evaluation.
class ExpContext {
 public:
  explicit ExpContext(Bridge bridge);

  const Bridge& bridge() const noexcept { return bridge_; }
  const RingContext& context() const noexcept { return bridge_.context(); }
  const EdwardsCurve& curve() const noexcept { return bridge_.edwards(); }
  const WeierstrassExp& weierstrass() const noexcept { return wexp_; }

  /// beta(chi^-1(Exp_W(z))) from the cleared series A = z^2 wp, B = z^3 wp'/2:
  ///   x = y1 (z A - (a'/3) z^3) / (x1 B),  y = (3A - (a' + 3x1) z^2) / (3A - (a' - 3x1) z^2).
  /// Throws BadValuation if v(z) = 0.
  EdwardsPoint exp(const RingElement& z) const;
  /// Inverse of exp on the kernel of reduction; throws NotInKernel.
  RingElement log(const EdwardsPoint& p) const;

 private:
  Bridge bridge_;
  WeierstrassExp wexp_;
  RingElement third_aprime_;
};

EdwardsPoint exp_e(const ExpContext& ctx, const RingElement& z);
RingElement log_e(const ExpContext& ctx, const EdwardsPoint& p);
/// Coordinate-wise reduction to F_p.
EdwardsPoint mod_e(const EdwardsPoint& p);

}  // namespace edpadic
