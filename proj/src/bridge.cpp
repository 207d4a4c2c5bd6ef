#include "edpadic/bridge.hpp"

#include <json.hpp>

#include "edpadic/error.hpp"

namespace edpadic {

Bridge derive_bridge(const RingElement& d, const RingElement& x1) {
  if (!(d.context() == x1.context())) throw Error(ErrorCode::ContextMismatch, "d and x1 from different rings");
  if (is_square_mod_p(d) == QuadraticClass::Residue) throw Error(ErrorCode::DSquare, "d is a square mod p");
  if (!(d * (d - 1)).is_unit()) throw Error(ErrorCode::NonUnit, "d(d-1) is not a unit");
  if (!x1.is_unit()) throw Error(ErrorCode::NonUnit, "x1 is not a unit");
  const RingElement one_minus_d = 1 - d;
  if (is_square_mod_p(x1) != is_square_mod_p(one_minus_d)) {
    throw Error(ErrorCode::ClassMismatch, "x1 = " + x1.to_string() + " and 1 - d are in different square classes");
  }
  const RingElement inv = one_minus_d.inverse();
  const RingElement y1 = sqrt_hensel(x1.pow(3) * 4 * inv);
  const RingElement ap = x1 * 2 * (1 + d) * inv;
  const RingElement bp = x1 * x1;
  Bridge b(EdwardsCurve(d), d, x1, y1, QuadWCurve(ap, bp));
  // Re-check the defining identities on the stored values.
  if (!(b.y1() * b.y1() * one_minus_d == x1.pow(3) * 4) || !(b.aprime() * one_minus_d == x1 * 2 * (1 + d))) {
    throw Error(ErrorCode::InternalNonUnimodular, "bridge identities failed");
  }
  return b;
}

RingElement default_x1(const RingElement& d) {
  const RingContext& ctx = d.context();
  const QuadraticClass want = is_square_mod_p(1 - d);
  for (std::uint64_t x = 1; x < ctx.prime(); ++x) {
    const auto x1 = RingElement::from_residue(ctx, x);
    if (is_square_mod_p(x1) == want) return x1;
  }
  throw Error(ErrorCode::ClassMismatch, "no admissible x1");
}

Bridge Bridge::reduced() const {
  const RingContext f = context().residue_field();
  return derive_bridge(reduce_to(d_, f), reduce_to(x1_, f));
}

std::string Bridge::to_json() const {
  const nlohmann::ordered_json j = {
      {"p", context().prime()},      {"k", context().precision()},  {"d", d_.residue()},
      {"x1", x1_.residue()},         {"y1", y1_.residue()},         {"aprime", aprime().residue()},
      {"bprime", bprime().residue()}, {"a", a().residue()},          {"b", b().residue()},
  };
  return j.dump();
}

WPoint alpha(const Bridge& b, const EdwardsPoint& p) {
  const RingElement &x = p.x, &y = p.y;
  const RingElement one_minus_y = 1 - y, one_plus_y = 1 + y;
  // x1(1+y)/(1-y) and y1(1+y)/(x(1-y)), cleared two ways.
  if (one_minus_y.is_unit()) {
    return WPoint(one_minus_y * one_minus_y, b.x1() * one_plus_y * one_minus_y,
                  b.y1() * x * (1 - b.d() * y * y));
  }
  return WPoint(x * one_minus_y, b.x1() * x * one_plus_y, b.y1() * one_plus_y);
}

EdwardsPoint beta(const Bridge& b, const WPoint& p) {
  if (!on_curve(b.quad(), p)) throw Error(ErrorCode::NotOnCurve, p.to_string() + " is not on the quadratic form");
  const RingElement &X = p.X(), &Y = p.Y(), &Z = p.Z();
  const RingElement q = X * X + b.aprime() * X * Z + b.bprime() * Z * Z;  // Y^2 Z = X q
  RingElement xe = RingElement::zero(b.context()), ye = xe;
  if (Y.is_unit()) {
    xe = b.y1() * X * (b.x1() * Y).inverse();
  } else if (q.is_unit()) {
    xe = b.y1() * Y * Z * (b.x1() * q).inverse();
  } else {
    throw Error(ErrorCode::ExceptionalFiber, p.to_string() + " has no Edwards image");
  }
  const RingElement den = X + b.x1() * Z;
  if (den.is_unit()) {
    ye = (X - b.x1() * Z) * den.inverse();
  } else {
    const RingElement y2 = Y * Y;
    const RingElement den2 = y2 + b.x1() * q;
    if (!den2.is_unit()) throw Error(ErrorCode::ExceptionalFiber, p.to_string() + " lies over abscissa -x1");
    ye = (y2 - b.x1() * q) * den2.inverse();
  }
  return {xe, ye};
}

WPoint chi(const Bridge& b, const WPoint& p) { return chi(b.quad(), p); }
WPoint chi_inv(const Bridge& b, const WPoint& p) { return chi_inv(b.quad(), p); }

}  // namespace edpadic
