#include "edpadic/exp_map.hpp"

#include "edpadic/error.hpp"

namespace edpadic {

ExpContext::ExpContext(Bridge bridge)
    : bridge_(std::move(bridge)),
      wexp_(bridge_.short_curve()),
      third_aprime_(bridge_.aprime() * from_rational(1, 3, bridge_.context())) {}

EdwardsPoint ExpContext::exp(const RingElement& z) const {
  if (!(z.context() == context())) throw Error(ErrorCode::ContextMismatch, "z from another ring");
  if (z.valuation() < 1) throw Error(ErrorCode::BadValuation, "Exp_E needs v(z) >= 1");
  const std::vector<RingElement> ab = wexp_.cleared(z);
  const RingElement &A = ab[0], &B = ab[1];
  const RingElement z2 = z * z;
  const RingElement &x1 = bridge_.x1(), &ap = bridge_.aprime();
  const RingElement xn = bridge_.y1() * (z * A - third_aprime_ * z2 * z);
  const RingElement yn = A * 3 - (ap + x1 * 3) * z2;
  const RingElement yd = A * 3 - (ap - x1 * 3) * z2;
  // B = -1 and A = 1 mod p, so both denominators are units.
  return {xn * (x1 * B).inverse(), yn * yd.inverse()};
}

RingElement ExpContext::log(const EdwardsPoint& p) const {
  if (!on_curve(curve(), p)) throw Error(ErrorCode::NotOnCurve, p.to_string() + " is not on the curve");
  if (!mod_e(p).is_neutral()) throw Error(ErrorCode::NotInKernel, p.to_string() + " does not reduce to (0, 1)");
  return wexp_.log(chi(bridge_, alpha(bridge_, p)));
}

EdwardsPoint exp_e(const ExpContext& ctx, const RingElement& z) { return ctx.exp(z); }
RingElement log_e(const ExpContext& ctx, const EdwardsPoint& p) { return ctx.log(p); }

EdwardsPoint mod_e(const EdwardsPoint& p) { return reduce_mod_p(p); }

}  // namespace edpadic
