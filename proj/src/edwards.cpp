#include "edpadic/edwards.hpp"

#include <cctype>

#include "edpadic/error.hpp"

namespace edpadic {

namespace {
constexpr std::uint64_t kCountGuard = 1000000;

std::int64_t floor_div2(std::int64_t t) { return t >= 0 ? t / 2 : -((-t + 1) / 2); }
}  // namespace

EdwardsCurve::EdwardsCurve(RingElement d) : d_(std::move(d)) {
  if (!(d_ * (d_ - 1)).is_unit()) throw Error(ErrorCode::Singular, "d(d-1) is not a unit");
  if (is_square_mod_p(d_) != QuadraticClass::NonResidue) {
    throw Error(ErrorCode::DSquare, "d = " + d_.to_string() + " is a square mod p");
  }
}

std::string EdwardsPoint::to_string() const { return "(" + x.to_string() + ", " + y.to_string() + ")"; }

EdwardsPoint parse_edwards_point(std::string_view text, const RingContext& ctx) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  const auto comma = s.find(',');
  if (s.size() < 5 || s.front() != '(' || s.back() != ')' || comma == std::string::npos) {
    throw Error(ErrorCode::ParseError, "expected (x, y): " + std::string(text));
  }
  return {parse_element(s.substr(1, comma - 1), ctx), parse_element(s.substr(comma + 1, s.size() - comma - 2), ctx)};
}

bool on_curve(const EdwardsCurve& e, const EdwardsPoint& p) {
  if (!(p.context() == e.context()) || !(p.y.context() == e.context())) return false;
  const RingElement x2 = p.x * p.x, y2 = p.y * p.y;
  return x2 + y2 == e.d() * x2 * y2 + 1;
}

EdwardsPoint edwards_add(const EdwardsCurve& e, const EdwardsPoint& p, const EdwardsPoint& q) {
  const RingElement t = e.d() * p.x * q.x * p.y * q.y;
  const RingElement dx = t + 1, dy = 1 - t;
  if (!dx.is_unit() || !dy.is_unit()) {
    throw Error(ErrorCode::NonUnitDenominator, "addition denominator vanishes mod p for " + p.to_string() + " + " +
                                                   q.to_string());
  }
  return {(p.x * q.y + q.x * p.y) * dx.inverse(), (p.y * q.y - p.x * q.x) * dy.inverse()};
}

EdwardsPoint negate(const EdwardsPoint& p) { return {-p.x, p.y}; }

EdwardsPoint scalar_mul(const EdwardsCurve& e, std::int64_t n, const EdwardsPoint& p) {
  EdwardsPoint base = n < 0 ? negate(p) : p;
  std::uint64_t m = n < 0 ? 0 - static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
  EdwardsPoint acc = EdwardsPoint::neutral(p.context());
  while (m != 0) {
    if (m & 1u) acc = edwards_add(e, acc, base);
    m >>= 1;
    if (m != 0) base = edwards_add(e, base, base);
  }
  return acc;
}

EdwardsPoint reduce_mod_p(const EdwardsPoint& p) {
  const RingContext f = p.context().residue_field();
  return {reduce_to(p.x, f), reduce_to(p.y, f)};
}

namespace {

// For a nonresidue d, 1 - d x^2 is a unit, so y^2 = (1 - x^2)/(1 - d x^2).
template <class Visit>
void scan(const EdwardsCurve& e, Visit&& visit) {
  const RingContext& ctx = e.context();
  const std::uint64_t m = ctx.modulus();
  if (m > kCountGuard) throw Error(ErrorCode::TooLarge, "affine scan guard is p^k <= 10^6");
  std::vector<std::vector<std::uint32_t>> roots(m);
  for (std::uint64_t y = 0; y < m; ++y) {
    const auto Y = RingElement::from_residue(ctx, y);
    roots[(Y * Y).residue()].push_back(static_cast<std::uint32_t>(y));
  }
  for (std::uint64_t x = 0; x < m; ++x) {
    const auto X = RingElement::from_residue(ctx, x);
    const RingElement x2 = X * X;
    const RingElement r = (1 - x2) * (1 - e.d() * x2).inverse();
    visit(X, roots[r.residue()]);
  }
}

}  // namespace

std::uint64_t count_affine(const EdwardsCurve& e) {
  std::uint64_t n = 0;
  scan(e, [&](const RingElement&, const std::vector<std::uint32_t>& ys) { n += ys.size(); });
  return n;
}

std::vector<EdwardsPoint> affine_points(const EdwardsCurve& e) {
  std::vector<EdwardsPoint> out;
  scan(e, [&](const RingElement& x, const std::vector<std::uint32_t>& ys) {
    for (std::uint32_t y : ys) out.push_back({x, RingElement::from_residue(e.context(), y)});
  });
  return out;
}

std::string DivisorClass::to_string() const {
  return "(" + base.to_string() + ", " + std::to_string(eps1) + ", " + std::to_string(eps2) + ")";
}

DivisorClass divisor_reduce(const EdwardsCurve& e, const AffineDivisor& affine, std::int64_t t1, std::int64_t t2) {
  std::int64_t degree = t1 + t2;
  EdwardsPoint sum = EdwardsPoint::neutral(e.context());
  for (const auto& [pt, m] : affine) {
    if (!on_curve(e, pt)) throw Error(ErrorCode::NotOnCurve, pt.to_string() + " is not on the curve");
    degree += m;
    sum = edwards_add(e, sum, scalar_mul(e, m, pt));
  }
  if (degree != 0) throw Error(ErrorCode::NonzeroDegree, "divisor degree is " + std::to_string(degree));
  // 2 Omega1 ~ O' + O and 2 Omega2 ~ H' + H; the latter pair sums to O.
  const std::int64_t q1 = floor_div2(t1);
  const EdwardsPoint base = edwards_add(e, sum, scalar_mul(e, q1, EdwardsPoint::o_prime(e.context())));
  return {base, static_cast<int>(t1 - 2 * q1), static_cast<int>(t2 - 2 * floor_div2(t2))};
}

}  // namespace edpadic
