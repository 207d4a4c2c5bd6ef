#include "edpadic/weierstrass.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "edpadic/error.hpp"

namespace edpadic {

namespace {

void require_same(const RingElement& a, const RingElement& b) {
  if (!(a.context() == b.context())) throw Error(ErrorCode::ContextMismatch, "curve coefficients from different rings");
}

RingElement third(const RingContext& ctx) { return from_rational(1, 3, ctx); }

bool unimodular(const RingElement& z, const RingElement& x, const RingElement& y) {
  return z.is_unit() || x.is_unit() || y.is_unit();
}

// Two bidegree-(2,2) addition laws for y^2 z = x^3 + a x z^2 + b z^3 in
// (X, Y, Z) coordinates. The first is complete on groups of odd order; the
// second degenerates only when P = Q. Over a local ring one of them stays
// unimodular.
struct Triple {
  RingElement x, y, z;
};

Triple law_one(const RingElement& a, const RingElement& b, const Triple& p, const Triple& q) {
  const RingElement b3 = b * 3;
  const RingElement xx = p.x * q.x, yy = p.y * q.y, zz = p.z * q.z;
  const RingElement xz = p.x * q.z + q.x * p.z;
  const RingElement xy = p.x * q.y + q.x * p.y;
  const RingElement yz = p.y * q.z + q.y * p.z;
  const RingElement s = yy - a * xz - b3 * zz;
  const RingElement t = yy + a * xz + b3 * zz;
  const RingElement u = a * xx + b3 * xz - a * a * zz;
  const RingElement w = xx * 3 + a * zz;
  return {xy * s - yz * u, w * u + t * s, yz * t + xy * w};
}

Triple law_two(const RingElement& a, const RingElement& b, const Triple& p, const Triple& q) {
  const RingElement &x1 = p.x, &y1 = p.y, &z1 = p.z, &x2 = q.x, &y2 = q.y, &z2 = q.z;
  const RingElement b3 = b * 3;
  const RingElement x3 = -a * x1 * x1 * z2 * z2 + x1 * y1 * y2 * z2 * 2 + x1 * y2 * y2 * z1 -
                         b3 * x1 * z1 * z2 * z2 + a * x2 * x2 * z1 * z1 - x2 * y1 * y1 * z2 -
                         x2 * y1 * y2 * z1 * 2 + b3 * x2 * z1 * z1 * z2;
  const RingElement y3 = -(x1 * x1 * x2 * y2 * 3) + x1 * x2 * x2 * y1 * 3 + a * x1 * y1 * z2 * z2 -
                         a * x1 * y2 * z1 * z2 * 2 + a * x2 * y1 * z1 * z2 * 2 - a * x2 * y2 * z1 * z1 -
                         y1 * y1 * y2 * z2 + y1 * y2 * y2 * z1 + b3 * y1 * z1 * z2 * z2 -
                         b3 * y2 * z1 * z1 * z2;
  const RingElement z3 = x1 * x1 * x2 * z2 * 3 - x1 * x2 * x2 * z1 * 3 + a * x1 * z1 * z2 * z2 -
                         a * x2 * z1 * z1 * z2 - y1 * y1 * z2 * z2 + y2 * y2 * z1 * z1;
  return {x3, y3, z3};
}

}  // namespace

ShortWCurve::ShortWCurve(RingElement a, RingElement b) : a_(std::move(a)), b_(std::move(b)) {
  require_same(a_, b_);
  const RingElement disc = a_.pow(3) * 4 + b_ * b_ * 27;
  if (!disc.is_unit()) throw Error(ErrorCode::Singular, "4a^3 + 27b^2 is not a unit");
}

ShortWCurve ShortWCurve::reduced() const {
  const RingContext f = context().residue_field();
  return ShortWCurve(reduce_to(a_, f), reduce_to(b_, f));
}

std::string ShortWCurve::to_string() const {
  return "y^2 = x^3 + " + a_.to_string() + "x + " + b_.to_string() + " over Z/" + context().to_string();
}

QuadWCurve::QuadWCurve(RingElement aprime, RingElement bprime) : ap_(std::move(aprime)), bp_(std::move(bprime)) {
  require_same(ap_, bp_);
  if (!(bp_ * (ap_ * ap_ - bp_ * 4)).is_unit()) {
    throw Error(ErrorCode::Singular, "b'(a'^2 - 4b') is not a unit");
  }
}

ShortWCurve QuadWCurve::short_form() const {
  const RingContext& ctx = context();
  const RingElement a = bp_ - ap_ * ap_ * third(ctx);
  const RingElement b = ap_ * (ap_ * ap_ * 2 - bp_ * 9) * from_rational(1, 27, ctx);
  return ShortWCurve(a, b);
}

QuadWCurve QuadWCurve::reduced() const {
  const RingContext f = context().residue_field();
  return QuadWCurve(reduce_to(ap_, f), reduce_to(bp_, f));
}

WPoint::WPoint(RingElement z, RingElement x, RingElement y) : z_(std::move(z)), x_(std::move(x)), y_(std::move(y)) {
  require_same(z_, x_);
  require_same(z_, y_);
  const RingElement* lead = y_.is_unit() ? &y_ : z_.is_unit() ? &z_ : x_.is_unit() ? &x_ : nullptr;
  if (lead == nullptr) throw Error(ErrorCode::NotOnCurve, "projective point has no unit coordinate");
  const RingElement s = lead->inverse();
  z_ *= s;
  x_ *= s;
  y_ *= s;
}

WPoint WPoint::infinity(const RingContext& ctx) {
  return WPoint(RingElement::zero(ctx), RingElement::zero(ctx), RingElement::one(ctx));
}

WPoint WPoint::affine(RingElement x, RingElement y) {
  RingElement one = RingElement::one(x.context());
  return WPoint(std::move(one), std::move(x), std::move(y));
}

RingElement WPoint::affine_x() const {
  if (!z_.is_unit()) throw Error(ErrorCode::NonUnit, "point is not affine");
  return x_ * z_.inverse();
}

RingElement WPoint::affine_y() const {
  if (!z_.is_unit()) throw Error(ErrorCode::NonUnit, "point is not affine");
  return y_ * z_.inverse();
}

std::string WPoint::to_string() const {
  return "[" + z_.to_string() + ":" + x_.to_string() + ":" + y_.to_string() + "]";
}

bool projectively_equal(const WPoint& p, const WPoint& q) {
  if (!(p.context() == q.context())) return false;
  return (p.Z() * q.X() - p.X() * q.Z()).is_zero() && (p.Z() * q.Y() - p.Y() * q.Z()).is_zero() &&
         (p.X() * q.Y() - p.Y() * q.X()).is_zero();
}

WPoint parse_wpoint(std::string_view text, const RingContext& ctx) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  const bool projective = s.size() >= 2 && s.front() == '[' && s.back() == ']';
  const bool affine = s.size() >= 2 && s.front() == '(' && s.back() == ')';
  if (!projective && !affine) throw Error(ErrorCode::ParseError, "expected [Z:X:Y] or (x, y): " + std::string(text));
  const char sep = projective ? ':' : ',';
  std::vector<std::string> parts{""};
  for (char ch : s.substr(1, s.size() - 2)) {
    if (ch == sep) {
      parts.emplace_back();
    } else {
      parts.back().push_back(ch);
    }
  }
  if (parts.size() != (projective ? 3u : 2u)) throw Error(ErrorCode::ParseError, "wrong coordinate count: " + s);
  if (affine) return WPoint::affine(parse_element(parts[0], ctx), parse_element(parts[1], ctx));
  return WPoint(parse_element(parts[0], ctx), parse_element(parts[1], ctx), parse_element(parts[2], ctx));
}

bool on_curve(const ShortWCurve& c, const WPoint& p) {
  if (!(c.context() == p.context())) return false;
  const RingElement &z = p.Z(), &x = p.X(), &y = p.Y();
  return (y * y * z - (x * x * x + c.a() * x * z * z + c.b() * z * z * z)).is_zero();
}

bool on_curve(const QuadWCurve& c, const WPoint& p) {
  if (!(c.context() == p.context())) return false;
  const RingElement &z = p.Z(), &x = p.X(), &y = p.Y();
  return (y * y * z - (x * x * x + c.aprime() * x * x * z + c.bprime() * x * z * z)).is_zero();
}

WPoint add_points(const ShortWCurve& c, const WPoint& p, const WPoint& q) {
  if (!on_curve(c, p) || !on_curve(c, q)) throw Error(ErrorCode::NotOnCurve, "add_points operand is not on the curve");
  const Triple tp{p.X(), p.Y(), p.Z()}, tq{q.X(), q.Y(), q.Z()};
  Triple r = law_one(c.a(), c.b(), tp, tq);
  if (!unimodular(r.z, r.x, r.y)) {
    r = law_two(c.a(), c.b(), tp, tq);
    if (!unimodular(r.z, r.x, r.y)) {
      throw Error(ErrorCode::InternalNonUnimodular, "both addition laws degenerate on " + p.to_string() + " + " +
                                                        q.to_string());
    }
  }
  return WPoint(r.z, r.x, r.y);
}

WPoint chi(const QuadWCurve& c, const WPoint& p) {
  return WPoint(p.Z(), p.X() + c.aprime() * third(c.context()) * p.Z(), p.Y());
}

WPoint chi_inv(const QuadWCurve& c, const WPoint& p) {
  return WPoint(p.Z(), p.X() - c.aprime() * third(c.context()) * p.Z(), p.Y());
}

WPoint add_points(const QuadWCurve& c, const WPoint& p, const WPoint& q) {
  if (!on_curve(c, p) || !on_curve(c, q)) throw Error(ErrorCode::NotOnCurve, "add_points operand is not on the curve");
  return chi_inv(c, add_points(c.short_form(), chi(c, p), chi(c, q)));
}

namespace {

template <class Curve>
WPoint ladder(const Curve& c, std::int64_t n, const WPoint& p) {
  if (!on_curve(c, p)) throw Error(ErrorCode::NotOnCurve, "scalar_mul operand is not on the curve");
  WPoint base = n < 0 ? -p : p;
  // Work with the magnitude as unsigned so INT64_MIN is fine.
  std::uint64_t m = n < 0 ? 0 - static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
  WPoint acc = WPoint::infinity(p.context());
  while (m != 0) {
    if (m & 1u) acc = add_points(c, acc, base);
    m >>= 1;
    if (m != 0) base = add_points(c, base, base);
  }
  return acc;
}

}  // namespace

WPoint scalar_mul(const ShortWCurve& c, std::int64_t n, const WPoint& p) { return ladder(c, n, p); }
WPoint scalar_mul(const QuadWCurve& c, std::int64_t n, const WPoint& p) { return ladder(c, n, p); }

WPoint reduce_mod_p(const WPoint& p) {
  const RingContext f = p.context().residue_field();
  return WPoint(reduce_to(p.Z(), f), reduce_to(p.X(), f), reduce_to(p.Y(), f));
}

WPoint hensel_lift(const ShortWCurve& c, const WPoint& pbar) {
  const RingContext& ctx = c.context();
  if (pbar.context() != ctx.residue_field()) throw Error(ErrorCode::ContextMismatch, "lift needs a point over F_p");
  if (!on_curve(c.reduced(), pbar)) throw Error(ErrorCode::NotOnCurve, "point is not on the reduced curve");
  if (pbar.is_infinity()) return WPoint::infinity(ctx);
  const RingElement xbar = pbar.affine_x(), ybar = pbar.affine_y();
  RingElement x = least_lift(xbar, ctx);
  RingElement y = least_lift(ybar, ctx);
  // Newton doubles the p-adic precision per step.
  if (!ybar.is_zero()) {
    for (int prec = 1; prec < ctx.precision(); prec *= 2) y -= (y * y - c.rhs(x)) * (y * 2).inverse();
  } else {
    for (int prec = 1; prec < ctx.precision(); prec *= 2) {
      const RingElement slope = x * x * 3 + c.a();
      if (!slope.is_unit()) throw Error(ErrorCode::NoLift, "reduced point is singular");
      x -= c.rhs(x) * slope.inverse();
    }
  }
  WPoint lifted = WPoint::affine(x, y);
  if (!on_curve(c, lifted)) throw Error(ErrorCode::NoLift, "Hensel iteration did not converge");
  return lifted;
}

namespace {

constexpr std::uint64_t kCountGuard = 10000;

template <class Curve>
std::uint64_t brute_count(const Curve& c) {
  const Curve f = c.reduced();
  const std::uint64_t p = f.context().modulus();
  if (p > kCountGuard) throw Error(ErrorCode::TooLarge, "point count guard is p <= 10^4");
  std::vector<std::uint32_t> roots(p, 0);  // number of y with y^2 = r
  for (std::uint64_t y = 0; y < p; ++y) ++roots[(y * y) % p];
  std::uint64_t n = 1;  // Omega
  for (std::uint64_t x = 0; x < p; ++x) {
    n += roots[f.rhs(RingElement::from_residue(f.context(), x)).residue()];
  }
  return n;
}

}  // namespace

std::uint64_t count_points_fp(const ShortWCurve& c) { return brute_count(c); }
std::uint64_t count_points_fp(const QuadWCurve& c) { return brute_count(c); }
bool is_anomalous(const ShortWCurve& c) { return count_points_fp(c) == c.context().prime(); }

bool in_kernel(const WPoint& p) { return !p.Z().is_unit() && !p.X().is_unit(); }

namespace {

WeierstrassParams<Rational> params_of(const ShortWCurve& c) {
  return numeric_params(Rational(mpz_class(static_cast<unsigned long>(c.g2().residue()))),
                        Rational(mpz_class(static_cast<unsigned long>(c.g3().residue()))));
}

int series_order_for(const RingContext& ctx) { return kernel_last_exponent(ctx) / 2 + 2; }

}  // namespace

WeierstrassExp::WeierstrassExp(const ShortWCurve& c)
    : curve_(c),
      z2_wp_(wp_series(params_of(c), series_order_for(c.context())).shifted(2), c.context(),
             kernel_last_exponent(c.context())),
      z3_half_wpp_(wp_prime_series(params_of(c), series_order_for(c.context())).shifted(3).scaled(Rational(1, 2)),
                   c.context(), kernel_last_exponent(c.context())),
      log_(revert_series(inverse_parameter_series(params_of(c), series_order_for(c.context()))), c.context(),
           kernel_last_exponent(c.context())) {}

WPoint WeierstrassExp::exp(const RingElement& z) const {
  if (!(z.context() == curve_.context())) throw Error(ErrorCode::ContextMismatch, "z from another ring");
  if (z.valuation() < 1) throw Error(ErrorCode::BadValuation, "Exp_W needs v(z) >= 1");
  if (z.is_zero()) return WPoint::infinity(z.context());
  return WPoint(z.pow(3), z * z2_wp_.evaluate(z), z3_half_wpp_.evaluate(z));
}

std::vector<RingElement> WeierstrassExp::cleared(const RingElement& z) const {
  if (!(z.context() == curve_.context())) throw Error(ErrorCode::ContextMismatch, "z from another ring");
  if (z.valuation() < 1) throw Error(ErrorCode::BadValuation, "Exp_W needs v(z) >= 1");
  return {z2_wp_.evaluate(z), z3_half_wpp_.evaluate(z)};
}

RingElement WeierstrassExp::log(const WPoint& p) const {
  if (!on_curve(curve_, p)) throw Error(ErrorCode::NotOnCurve, "Log_W operand is not on the curve");
  if (!in_kernel(p)) throw Error(ErrorCode::NotInKernel, p.to_string() + " does not reduce to Omega");
  const RingElement t = -(p.X() * p.Y().inverse());
  return log_.evaluate(t);
}

WPoint exp_w(const ShortWCurve& c, const RingElement& z) { return WeierstrassExp(c).exp(z); }
RingElement log_w(const ShortWCurve& c, const WPoint& p) { return WeierstrassExp(c).log(p); }

}  // namespace edpadic
