// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <map>
#include <random>
#include <set>
#include <string>

#include "edpadic/split.hpp"
#include "oracles.hpp"

using namespace edpadic;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::vector<std::uint64_t> nonresidues(std::uint64_t p) {
  std::set<std::uint64_t> sq;
  for (std::uint64_t y = 1; y < p; ++y) sq.insert(y * y % p);
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d < p; ++d) {
    if (!sq.count(d)) out.push_back(d);
  }
  return out;
}

Bridge bridge(std::uint64_t d, std::uint64_t p, int k) {
  const RingElement D = RingElement::from_residue(RingContext(p, k), d);
  return derive_bridge(D, default_x1(D));
}

#define REQUIRE(cond, msg)                       \
  do {                                           \
    if (!(cond)) return Outcome{false, (msg)};   \
  } while (0)

Outcome anomalous_example() {
  const RingContext f(53, 1), r(53, 2);
  const ShortWCurve cf(RingElement(f, 4), RingElement(f, 7)), cr(RingElement(r, 4), RingElement(r, 7));
  REQUIRE(count_points_fp(cf) == 53, "count over F_53 is " + std::to_string(count_points_fp(cf)));
  const auto R = scalar_mul(cr, 53, WPoint::affine(RingElement(r, 3), RingElement(r, 130)));
  const WPoint target(RingElement(r, 0), RingElement(r, 53), RingElement(r, 1603));
  REQUIRE(projectively_equal(R, target), "53 P = " + R.to_string());
  REQUIRE(!projectively_equal(R, WPoint::infinity(r)), "53 P is Omega");
  return {true, "|E(F_53)| = 53; 53(3,130) = " + R.to_string() + " ~ [0:53:1603] != Omega"};
}

Outcome series_identity() {
  for (int M = 4; M <= 10; ++M) {
    REQUIRE(verify_differential_identity(symbolic_params(), M), "identity fails at M = " + std::to_string(M));
  }
  const auto r = differential_residual(symbolic_params(), {}, 10);
  return {true, "(wp'/2)^2 - wp^3 + (g2/4)wp + g3/4 = O(z^" + std::to_string(r.order()) + ") symbolically, M = 10"};
}

Outcome inverse_series() {
  const auto w = inverse_parameter_series(symbolic_params(), 8);
  auto mono = [](long n, long d, int e2, int e3) {
    Rational q(n, d);
    q.canonicalize();
    return GPoly::monomial(q, e2, e3);
  };
  REQUIRE(w.coeff(1) == GPoly(1) && w.coeff(3) == GPoly(0), "leading terms");
  REQUIRE(w.coeff(5) == mono(1, 10, 1, 0), "z^5: " + w.coeff(5).to_string());
  REQUIRE(w.coeff(7) == mono(3, 28, 0, 1), "z^7: " + w.coeff(7).to_string());
  REQUIRE(w.coeff(9) == mono(1, 120, 2, 0), "z^9: " + w.coeff(9).to_string());
  REQUIRE(w.coeff(11) == mono(23, 1540, 1, 1), "z^11: " + w.coeff(11).to_string());
  return {true, "g2/10, 3g3/28, g2^2/120, 23g2g3/1540"};
}

Outcome exp_homomorphism() {
  std::size_t pairs = 0, configs = 0;
  for (std::uint64_t p : {7, 11, 13}) {
    for (int k = 2; k <= 3; ++k) {
      for (std::uint64_t d : nonresidues(p)) {
        const ExpContext E(bridge(d, p, k));
        const RingContext& c = E.context();
        std::vector<EdwardsPoint> table;
        for (std::uint64_t z = 0; z < c.modulus(); z += p) table.push_back(E.exp(RingElement::from_residue(c, z)));
        const std::size_t q = table.size();
        for (std::size_t i = 0; i < q; ++i) {
          for (std::size_t j = 0; j < q; ++j) {
            if (!(table[(i + j) % q] == edwards_add(E.curve(), table[i], table[j]))) {
              return {false, "p=" + std::to_string(p) + " k=" + std::to_string(k) + " d=" + std::to_string(d)};
            }
          }
        }
        pairs += q * q;
        ++configs;
      }
    }
  }
  return {true, std::to_string(configs) + " configurations, " + std::to_string(pairs) + " pairs"};
}

Outcome exactness() {
  std::size_t configs = 0;
  for (std::uint64_t p : {7, 11, 13}) {
    for (int k = 2; k <= 3; ++k) {
      for (std::uint64_t d : nonresidues(p)) {
        const ExpContext E(bridge(d, p, k));
        const RingContext& c = E.context();
        std::set<EdwardsPoint> image, kernel;
        for (std::uint64_t z = 0; z < c.modulus(); z += p) {
          const auto Z = RingElement::from_residue(c, z);
          const auto P = E.exp(Z);
          REQUIRE(E.log(P) == Z, "log(exp(z)) != z");
          image.insert(P);
        }
        for (const auto& P : affine_points(E.curve())) {
          if (mod_e(P).is_neutral()) kernel.insert(P);
        }
        REQUIRE(image == kernel, "image != kernel at p=" + std::to_string(p) + " k=" + std::to_string(k));
        ++configs;
      }
    }
  }
  return {true, "image = kernel and log o exp = id on " + std::to_string(configs) + " configurations"};
}

Outcome point_count_identity() {
  std::string detail;
  for (auto [p, k] : {std::pair<std::uint64_t, int>{5, 2}, {5, 3}, {7, 2}, {11, 2}}) {
    for (std::uint64_t d : nonresidues(p)) {
      const EdwardsCurve e(RingElement::from_residue(RingContext(p, k), d));
      // Pair scan, independent of the table used by count_affine.
      std::uint64_t brute = 0;
      const RingContext& c = e.context();
      for (std::uint64_t x = 0; x < c.modulus(); ++x) {
        for (std::uint64_t y = 0; y < c.modulus(); ++y) {
          brute += on_curve(e, {RingElement::from_residue(c, x), RingElement::from_residue(c, y)});
        }
      }
      const std::uint64_t base = count_affine(e.reduced());
      REQUIRE(brute == count_affine(e), "count_affine disagrees with the pair scan");
      REQUIRE(brute == base * (c.modulus() / p), "p=" + std::to_string(p) + " d=" + std::to_string(d));
      if (d == nonresidues(p).front()) {
        detail += std::to_string(p) + "^" + std::to_string(k) + ": " + std::to_string(brute) + " = " +
                  std::to_string(base) + "*" + std::to_string(c.modulus() / p) + "; ";
      }
    }
  }
  return {true, detail};
}

Outcome birational_transport() {
  std::size_t pairs = 0;
  for (std::uint64_t p : {5, 7, 11, 13}) {
    for (int k = 1; k <= 2; ++k) {
      for (std::uint64_t d : nonresidues(p)) {
        const Bridge b = bridge(d, p, k);
        const auto ed = affine_points(b.edwards());
        const auto wp = oracle::all_points(b.quad());
        REQUIRE(ed.size() == wp.size(), "point sets differ in size");
        std::vector<WPoint> images;
        for (const auto& P : ed) {
          images.push_back(alpha(b, P));
          REQUIRE(beta(b, images.back()) == P, "beta(alpha(P)) != P");
        }
        for (const auto& Q : wp) REQUIRE(alpha(b, beta(b, Q)) == Q, "alpha(beta(Q)) != Q");
        std::map<EdwardsPoint, std::size_t> index;
        for (std::size_t i = 0; i < ed.size(); ++i) index[ed[i]] = i;
        for (std::size_t i = 0; i < ed.size(); ++i) {
          for (std::size_t j = 0; j < ed.size(); ++j) {
            const auto S = edwards_add(b.edwards(), ed[i], ed[j]);
            REQUIRE(images[index.at(S)] == add_points(b.quad(), images[i], images[j]), "alpha not a homomorphism");
          }
        }
        pairs += ed.size() * ed.size();
        if (k == 1) {
          REQUIRE(count_affine(b.edwards()) == count_points_fp(b.short_curve()), "Edwards and Weierstrass orders differ");
        }
      }
    }
  }
  return {true, std::to_string(pairs) + " pairs transported"};
}

Outcome divisor_forms() {
  const EdwardsCurve e(RingElement(RingContext(5, 2), 3));
  const RingContext& c = e.context();
  const auto O = EdwardsPoint::neutral(c);
  REQUIRE(divisor_reduce(e, {{O, -2}}, 2, 0) == (DivisorClass{EdwardsPoint::o_prime(c), 0, 0}), "2 Omega1 - 2 O");
  REQUIRE(divisor_reduce(e, {{O, -2}}, 0, 2) == (DivisorClass{O, 0, 0}), "2 Omega2 - 2 O");
  const auto pts = affine_points(e);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  std::uniform_int_distribution<int> mult(-4, 4);
  std::set<std::pair<int, int>> seen;
  for (int trial = 0; trial < 200; ++trial) {
    AffineDivisor a, b;
    std::int64_t ta[2], tb[2];
    for (auto* pr : {&a, &b}) {
      std::int64_t deg = 0;
      for (int i = 0; i < 3; ++i) {
        const int m = mult(rng);
        pr->push_back({pts[pick(rng)], m});
        deg += m;
      }
      std::int64_t* t = pr == &a ? ta : tb;
      t[0] = mult(rng);
      t[1] = -deg - t[0];
    }
    const auto ra = divisor_reduce(e, a, ta[0], ta[1]), rb = divisor_reduce(e, b, tb[0], tb[1]);
    AffineDivisor sum = a;
    sum.insert(sum.end(), b.begin(), b.end());
    const auto rs = divisor_reduce(e, sum, ta[0] + tb[0], ta[1] + tb[1]);
    REQUIRE(rs.eps1 == (ra.eps1 ^ rb.eps1) && rs.eps2 == (ra.eps2 ^ rb.eps2), "coset map not additive");
    seen.insert({ra.eps1, ra.eps2});
  }
  REQUIRE(seen.size() == 4, "coset map not surjective");
  return {true, "2Omega1-2O ~ O'-O, 2Omega2-2O ~ O-O, 200 random pairs, 4 cosets hit"};
}

Outcome split_isomorphism() {
  std::string detail;
  for (std::uint64_t p : {5, 7}) {
    for (int k = 2; k <= 3; ++k) {
      const std::uint64_t d = nonresidues(p).front();
      const GroupContext g{ExpContext(bridge(d, p, k))};
      const auto pts = affine_points(g.curve());
      REQUIRE(pts.size() == g.n() * g.kernel_order(), "point count");
      std::map<EdwardsPoint, SplitPoint> fwd;
      std::map<std::pair<EdwardsPoint, std::uint64_t>, EdwardsPoint> back;
      for (const auto& P : pts) {
        const auto s = split(g, P);
        REQUIRE(unsplit(g, s) == P, "unsplit(split(P)) != P");
        fwd.emplace(P, s);
        back.emplace(std::pair{s.base, s.c}, P);
      }
      REQUIRE(back.size() == pts.size(), "split not injective");
      for (const auto& P : pts) {
        for (const auto& Q : pts) {
          const auto S = edwards_add(g.curve(), P, Q);
          const auto sum = split_add(g, fwd.at(P), fwd.at(Q));
          REQUIRE(fwd.at(S) == sum, "split not a homomorphism");
          REQUIRE(back.at({sum.base, sum.c}) == S, "split_add disagrees with the direct law");
        }
      }
      detail += std::to_string(p) + "^" + std::to_string(k) + ": n=" + std::to_string(g.n()) + " (" +
                std::to_string(pts.size()) + " pts); ";
    }
  }
  return {true, detail};
}

Outcome edwards_completeness() {
  std::size_t pairs = 0;
  for (std::uint64_t p : {5, 7, 11, 13}) {
    for (int k = 1; k <= 2; ++k) {
      const RingContext c(p, k);
      for (std::uint64_t d = 0; d < c.modulus(); ++d) {
        const auto D = RingElement::from_residue(c, d);
        if (is_square_mod_p(D) != QuadraticClass::NonResidue) continue;
        const EdwardsCurve e(D);
        const auto pts = affine_points(e);
        for (const auto& P : pts) {
          for (const auto& Q : pts) {
            try {
              edwards_add(e, P, Q);
            } catch (const Error& err) {
              return {false, err.what()};
            }
          }
        }
        pairs += pts.size() * pts.size();
      }
    }
  }
  return {true, std::to_string(pairs) + " pairs, no NonUnitDenominator"};
}

Outcome benchmark() {
  const RingContext c(11, 8);
  const GroupContext g{ExpContext(derive_bridge(RingElement(c, -1), RingElement(c, 2)))};
  const auto report = bench_compare(g, 10000, 5);
  const auto j = nlohmann::json::parse(report.to_json());
  for (const char* key : {"n_direct_ns", "n_split_ns", "ratio", "p", "k", "d", "samples"}) {
    REQUIRE(j.contains(key), std::string("missing field ") + key);
  }
  REQUIRE(j["samples"] == 10000 && j["p"] == 11 && j["k"] == 8, "report fields");
  REQUIRE(report.ratio > 0, "ratio");
  return {true, report.to_json()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"anomalous example over F_53 and Z/53^2", anomalous_example},
      {"differential identity, symbolic, M = 10", series_identity},
      {"inverse-parameter series coefficients", inverse_series},
      {"Exp_E homomorphism, p in {7,11,13}, k in {2,3}", exp_homomorphism},
      {"exactness: image of Exp_E = kernel of Mod_E, Log_E o Exp_E = id", exactness},
      {"point-count identity over Z/p^k", point_count_identity},
      {"birational transport alpha/beta", birational_transport},
      {"divisor canonical forms and coset homomorphism", divisor_forms},
      {"split-representation isomorphism", split_isomorphism},
      {"Edwards completeness", edwards_completeness},
      {"benchmark p = 11, k = 8, 10^4 additions", benchmark},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    failures += r.ok ? 0 : 1;
    std::printf("%s %2zu %s (%.0f ms): %s\n", r.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), ms,
                r.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
