#include <gtest/gtest.h>

#include <set>

#include "edpadic/weierstrass.hpp"
#include "oracles.hpp"

using namespace edpadic;
using oracle::error_of;

namespace {

ShortWCurve curve(std::int64_t a, std::int64_t b, std::uint64_t p, int k) {
  const RingContext ctx(p, k);
  return ShortWCurve(RingElement(ctx, a), RingElement(ctx, b));
}

bool nonsingular(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (4 * a * a * a + 27 * b * b) % p != 0; }

std::vector<WPoint> fp_points(const ShortWCurve& c) {
  const RingContext& f = c.context();
  std::vector<WPoint> out{WPoint::infinity(f)};
  for (std::uint64_t x = 0; x < f.modulus(); ++x) {
    for (std::uint64_t y = 0; y < f.modulus(); ++y) {
      const auto X = RingElement::from_residue(f, x), Y = RingElement::from_residue(f, y);
      if (Y * Y == c.rhs(X)) out.push_back(WPoint::affine(X, Y));
    }
  }
  return out;
}

std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> as_set(const std::vector<WPoint>& v) {
  std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> s;
  for (const auto& P : v) s.emplace(P.Z().residue(), P.X().residue(), P.Y().residue());
  return s;
}

}  // namespace

TEST(Curves, Construction) {
  EXPECT_EQ(error_of([] { curve(0, 0, 7, 1); }), ErrorCode::Singular);
  EXPECT_EQ(error_of([] { curve(-3, 2, 7, 1); }), ErrorCode::Singular);  // (x-1)^2(x+2)
  const RingContext c5(5, 1);
  EXPECT_EQ(error_of([&] { QuadWCurve(RingElement(c5, 2), RingElement(c5, 1)); }), ErrorCode::Singular);
  EXPECT_EQ(error_of([&] { ShortWCurve(RingElement(c5, 1), RingElement(RingContext(7, 1), 1)); }),
            ErrorCode::ContextMismatch);
}

TEST(OnCurve, Examples) {
  const auto c = curve(4, 7, 53, 2);
  const RingContext& ctx = c.context();
  EXPECT_TRUE(on_curve(c, WPoint::affine(RingElement(ctx, 3), RingElement(ctx, 130))));
  EXPECT_TRUE(on_curve(c, WPoint::infinity(ctx)));
  EXPECT_FALSE(on_curve(c, WPoint::affine(RingElement(ctx, 0), RingElement(ctx, 1))));
}

TEST(WPointTest, NormalizationAndParsing) {
  const RingContext ctx(53, 2);
  const WPoint P(RingElement(ctx, 2), RingElement(ctx, 6), RingElement(ctx, 260));
  EXPECT_EQ(P, WPoint::affine(RingElement(ctx, 3), RingElement(ctx, 130)));
  EXPECT_EQ(P.Y().residue(), 1u);
  EXPECT_EQ(WPoint(P.Z(), P.X(), P.Y()), P);  // idempotent
  EXPECT_EQ(parse_wpoint("(3, 130)", ctx), P);
  EXPECT_EQ(parse_wpoint(P.to_string(), ctx), P);
  EXPECT_EQ(WPoint(RingElement(ctx, 0), RingElement(ctx, 0), RingElement(ctx, 13)), WPoint::infinity(ctx));
  EXPECT_EQ(error_of([&] { WPoint(RingElement(ctx, 53), RingElement(ctx, 0), RingElement(ctx, 106)); }),
            ErrorCode::NotOnCurve);
  EXPECT_EQ(error_of([&] { parse_wpoint("3,130", ctx); }), ErrorCode::ParseError);
  EXPECT_TRUE(projectively_equal(P, WPoint(RingElement(ctx, 5), RingElement(ctx, 15), RingElement(ctx, 650))));
}

TEST(AnomalousExample, CountAndScalar) {
  const auto c = curve(4, 7, 53, 2);
  EXPECT_EQ(count_points_fp(c), 53u);
  EXPECT_TRUE(is_anomalous(c));
  const RingContext& ctx = c.context();
  const auto P = WPoint::affine(RingElement(ctx, 3), RingElement(ctx, 130));
  const auto R = scalar_mul(c, 53, P);
  const WPoint expected(RingElement(ctx, 0), RingElement(ctx, 53), RingElement(ctx, 1603));
  EXPECT_TRUE(projectively_equal(R, expected)) << R.to_string();
  EXPECT_FALSE(R.is_infinity());
  EXPECT_TRUE(scalar_mul(c.reduced(), 53, reduce_mod_p(P)).is_infinity());
  EXPECT_EQ(reduce_mod_p(P), WPoint::affine(RingElement(RingContext(53, 1), 3), RingElement(RingContext(53, 1), 24)));
  EXPECT_TRUE(reduce_mod_p(expected).is_infinity());
  EXPECT_EQ(error_of([&] { log_w(c, P); }), ErrorCode::NotInKernel);
}

TEST(Counting, Examples) {
  const RingContext f5(5, 1);
  EXPECT_EQ(count_points_fp(QuadWCurve(RingElement(f5, 2), RingElement(f5, 4))), 4u);
  EXPECT_FALSE(is_anomalous(QuadWCurve(RingElement(f5, 2), RingElement(f5, 4)).short_form()));
  EXPECT_EQ(count_points_fp(curve(1, 0, 5, 1)), 4u);
  EXPECT_FALSE(is_anomalous(curve(1, 0, 5, 1)));
  EXPECT_EQ(error_of([] { count_points_fp(curve(1, 1, 10007, 1)); }), ErrorCode::TooLarge);
}

TEST(Counting, BruteForceAndHasse) {
  for (std::uint64_t p : {5, 7, 11, 13, 53}) {
    for (std::uint64_t a = 0; a < p; ++a) {
      for (std::uint64_t b = 0; b < p; ++b) {
        if (!nonsingular(a, b, p)) continue;
        std::uint64_t n = 1;
        for (std::uint64_t x = 0; x < p; ++x) n += oracle::legendre_count((x * x * x + a * x + b) % p, p);
        const auto c = curve(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), p, 1);
        ASSERT_EQ(count_points_fp(c), n);
        const double dev = static_cast<double>(n) - static_cast<double>(p + 1);
        ASSERT_LE(dev * dev, 4.0 * static_cast<double>(p));
      }
    }
  }
}

TEST(Addition, MatchesChordTangentAndGroupAxioms) {
  for (std::uint64_t p : {5, 7, 11, 13}) {
    for (std::uint64_t a = 0; a < p; ++a) {
      for (std::uint64_t b = 0; b < p; ++b) {
        if (!nonsingular(a, b, p)) continue;
        const auto c = curve(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), p, 1);
        const auto pts = fp_points(c);
        const WPoint O = WPoint::infinity(c.context());
        for (const auto& P : pts) {
          ASSERT_EQ(add_points(c, P, O), P);
          ASSERT_TRUE(add_points(c, P, -P).is_infinity());
          for (const auto& Q : pts) {
            const auto S = add_points(c, P, Q);
            ASSERT_TRUE(on_curve(c, S));
            ASSERT_EQ(S, add_points(c, Q, P));
            if (P.is_infinity() || Q.is_infinity()) continue;
            const auto ct = oracle::chord_tangent(a, {P.affine_x().residue(), P.affine_y().residue()},
                                                  {Q.affine_x().residue(), Q.affine_y().residue()}, p);
            if (!ct) {
              ASSERT_TRUE(S.is_infinity());
            } else {
              ASSERT_EQ(S, WPoint::affine(RingElement::from_residue(c.context(), ct->x),
                                          RingElement::from_residue(c.context(), ct->y)));
            }
          }
        }
      }
    }
  }
}

TEST(Addition, AssociativityExhaustive) {
  for (std::uint64_t p : {5, 7, 11, 13}) {
    // Two curves per prime keep the triple scan quick.
    int done = 0;
    for (std::uint64_t a = 1; a < p && done < 2; ++a) {
      for (std::uint64_t b = 1; b < p && done < 2; b += 3) {
        if (!nonsingular(a, b, p)) continue;
        ++done;
        const auto c = curve(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), p, 1);
        const auto pts = fp_points(c);
        for (const auto& P : pts) {
          for (const auto& Q : pts) {
            const auto PQ = add_points(c, P, Q);
            for (const auto& R : pts) ASSERT_EQ(add_points(c, PQ, R), add_points(c, P, add_points(c, Q, R)));
          }
        }
      }
    }
  }
}

// Over Z/p^2 the law is total, reduction is a homomorphism and the group has
// |E(F_p)| * p elements.
TEST(Addition, RingLawExhaustive) {
  for (std::uint64_t p : {5, 7}) {
    for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 3}, std::pair{0, 2}}) {
      if (!nonsingular(a, b, p)) continue;
      const auto c = curve(a, b, p, 2);
      const auto pts = oracle::all_points(c);
      ASSERT_EQ(pts.size(), count_points_fp(c) * p);
      for (const auto& P : pts) {
        for (const auto& Q : pts) {
          const auto S = add_points(c, P, Q);
          ASSERT_TRUE(on_curve(c, S));
          ASSERT_EQ(reduce_mod_p(S), add_points(c.reduced(), reduce_mod_p(P), reduce_mod_p(Q)));
        }
      }
    }
  }
}

TEST(Addition, RejectsOffCurve) {
  const auto c = curve(4, 7, 53, 1);
  const auto bad = WPoint::affine(RingElement(c.context(), 0), RingElement(c.context(), 1));
  EXPECT_EQ(error_of([&] { add_points(c, bad, bad); }), ErrorCode::NotOnCurve);
}

TEST(ScalarMul, Basics) {
  const auto c = curve(4, 7, 53, 1);
  const RingContext& f = c.context();
  const auto P = WPoint::affine(RingElement(f, 3), RingElement(f, 24));
  EXPECT_TRUE(scalar_mul(c, 0, P).is_infinity());
  EXPECT_EQ(scalar_mul(c, 1, P), P);
  EXPECT_EQ(scalar_mul(c, -1, P), -P);
  const auto dbl = oracle::chord_tangent(4, {3, 24}, {3, 24}, 53);
  ASSERT_TRUE(dbl.has_value());
  EXPECT_EQ(scalar_mul(c, 2, P), WPoint::affine(RingElement::from_residue(f, dbl->x), RingElement::from_residue(f, dbl->y)));
  WPoint acc = WPoint::infinity(f);
  for (int n = 0; n < 60; ++n) {
    ASSERT_EQ(scalar_mul(c, n, P), acc);
    ASSERT_EQ(scalar_mul(c, -n, P), -acc);
    acc = add_points(c, acc, P);
  }
}

TEST(HenselLift, ExampleAndRoundTrip) {
  const auto c = curve(4, 7, 53, 2);
  const RingContext f(53, 1);
  EXPECT_EQ(hensel_lift(c, WPoint::affine(RingElement(f, 3), RingElement(f, 24))),
            WPoint::affine(RingElement(c.context(), 3), RingElement(c.context(), 130)));
  EXPECT_TRUE(hensel_lift(c, WPoint::infinity(f)).is_infinity());
  for (std::uint64_t p : {5, 7, 13}) {
    for (int k = 1; k <= 3; ++k) {
      for (std::uint64_t a = 0; a < p; ++a) {
        for (std::uint64_t b = 0; b < p; ++b) {
          if (!nonsingular(a, b, p)) continue;
          const auto C = curve(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), p, k);
          for (const auto& Pbar : fp_points(C.reduced())) {
            const auto L = hensel_lift(C, Pbar);
            ASSERT_TRUE(on_curve(C, L));
            ASSERT_EQ(reduce_mod_p(L), Pbar);
            if (Pbar.is_affine() && !Pbar.affine_y().is_zero()) {
              ASSERT_EQ(L.affine_x().residue(), Pbar.affine_x().residue());
            }
          }
        }
      }
    }
  }
}

TEST(ExpW, BasicsAndExample) {
  const auto c = curve(3, 2, 7, 3);
  const RingContext& ctx = c.context();
  const WeierstrassExp E(c);
  EXPECT_TRUE(E.exp(RingElement(ctx, 0)).is_infinity());
  EXPECT_EQ(add_points(c, E.exp(RingElement(ctx, 7)), E.exp(RingElement(ctx, 14))), E.exp(RingElement(ctx, 21)));
  EXPECT_EQ(error_of([&] { E.exp(RingElement(ctx, 3)); }), ErrorCode::BadValuation);
  EXPECT_EQ(E.log(WPoint::infinity(ctx)), RingElement(ctx, 0));
  EXPECT_EQ(exp_w(c, RingElement(ctx, 49)), E.exp(RingElement(ctx, 49)));
  EXPECT_EQ(log_w(c, E.exp(RingElement(ctx, 49))), RingElement(ctx, 49));
}

// Image of Exp_W equals the kernel of reduction, Exp_W is injective and a
// homomorphism, and Log_W inverts it.
TEST(ExpW, KernelExactnessExhaustive) {
  for (std::uint64_t p : {5, 7, 11, 13}) {
    for (int k = 2; k <= 3; ++k) {
      for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 3}, std::pair{3, 2}}) {
        if (!nonsingular(a, b, p)) continue;
        const auto c = curve(a, b, p, k);
        const RingContext& ctx = c.context();
        const WeierstrassExp E(c);
        std::vector<WPoint> image;
        for (std::uint64_t z = 0; z < ctx.modulus(); z += p) {
          const auto Z = RingElement::from_residue(ctx, z);
          const auto P = E.exp(Z);
          ASSERT_TRUE(on_curve(c, P));
          ASSERT_TRUE(reduce_mod_p(P).is_infinity());
          ASSERT_EQ(P.is_infinity(), z == 0);
          // shape [p h1 : p h2 : h3] with h3 a unit
          ASSERT_TRUE(P.Y().is_unit());
          ASSERT_GE(P.Z().valuation(), 1);
          ASSERT_GE(P.X().valuation(), 1);
          ASSERT_EQ(E.log(P), Z);
          image.push_back(P);
        }
        std::vector<WPoint> kernel;
        for (const auto& P : oracle::all_points(c)) {
          if (reduce_mod_p(P).is_infinity()) kernel.push_back(P);
        }
        ASSERT_EQ(as_set(image), as_set(kernel));
        ASSERT_EQ(as_set(image).size(), ctx.modulus() / p);
        for (std::uint64_t z1 = 0; z1 < ctx.modulus(); z1 += p) {
          for (std::uint64_t z2 = 0; z2 < ctx.modulus(); z2 += p) {
            const auto Z1 = RingElement::from_residue(ctx, z1), Z2 = RingElement::from_residue(ctx, z2);
            ASSERT_EQ(E.exp(Z1 + Z2), add_points(c, E.exp(Z1), E.exp(Z2)));
          }
        }
      }
    }
  }
}

TEST(ExpW, LogRoundTripK4) {
  for (std::uint64_t p : {7, 11}) {
    const auto c = curve(1, 3, p, 4);
    const WeierstrassExp E(c);
    for (std::uint64_t z = 0; z < c.context().modulus(); z += p) {
      const auto Z = RingElement::from_residue(c.context(), z);
      ASSERT_EQ(E.log(E.exp(Z)), Z);
    }
  }
}

TEST(Chi, TranslatesBetweenShapes) {
  const RingContext ctx(7, 2);
  const QuadWCurve q(RingElement(ctx, 3), RingElement(ctx, 5));
  const ShortWCurve s = q.short_form();
  // Substitution oracle: rhs_quad(xbar - a'/3) == rhs_short(xbar) for all xbar.
  const auto t = from_rational(1, 3, ctx) * q.aprime();
  for (std::uint64_t x = 0; x < ctx.modulus(); ++x) {
    const auto X = RingElement::from_residue(ctx, x);
    ASSERT_EQ(q.rhs(X - t), s.rhs(X));
  }
  EXPECT_TRUE(chi(q, WPoint::infinity(ctx)).is_infinity());
  EXPECT_EQ(count_points_fp(q), count_points_fp(s));
}
