#include "edpadic/split.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>
#include <numeric>
#include <random>

#include "edpadic/error.hpp"

namespace edpadic {

namespace {

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  mpz_class r;
  const mpz_class am(static_cast<unsigned long>(a)), mm(static_cast<unsigned long>(m));
  if (mpz_invert(r.get_mpz_t(), am.get_mpz_t(), mm.get_mpz_t()) == 0) {
    throw Error(ErrorCode::NonUnit, std::to_string(a) + " is not invertible mod " + std::to_string(m));
  }
  return r.get_ui();
}

}  // namespace

std::string SplitPoint::to_string() const { return "(" + base.to_string() + ", " + std::to_string(c) + ")"; }

GroupContext::GroupContext(ExpContext exp)
    : exp_(std::move(exp)),
      residue_bridge_(exp_.bridge().reduced()),
      residue_curve_(residue_bridge_.edwards()),
      n_(count_affine(residue_curve_)),
      u_(0),
      v_(0),
      q_(exp_.context().prime_power(exp_.context().precision() - 1)) {
  if (n_ % exp_.context().prime() == 0) {
    throw Error(ErrorCode::Anomalous, "|E(F_p)| = " + std::to_string(n_) + " is divisible by p; the sequence does not split");
  }
  u_ = inverse_mod(n_ % q_, q_);
  v_ = inverse_mod(q_ % n_, n_);
}

GroupContext make_group_context(const ExpContext& exp) { return GroupContext(exp); }

EdwardsPoint GroupContext::lift(const EdwardsPoint& pbar) const {
  const Bridge& b = exp_.bridge();
  const WPoint wbar = chi(residue_bridge_, alpha(residue_bridge_, pbar));
  return beta(b, chi_inv(b, hensel_lift(b.short_curve(), wbar)));
}

std::uint64_t require_non_anomalous(const ShortWCurve& c) {
  const std::uint64_t n = count_points_fp(c);
  if (n == c.context().prime()) {
    throw Error(ErrorCode::Anomalous, "curve has exactly p = " + std::to_string(n) + " points");
  }
  return n;
}

SplitPoint split(const GroupContext& g, const EdwardsPoint& p) {
  if (!on_curve(g.curve(), p)) throw Error(ErrorCode::NotOnCurve, p.to_string() + " is not on the curve");
  // n u kills the F_p part and acts as 1 on the kernel.
  const auto nu = static_cast<std::int64_t>((static_cast<unsigned __int128>(g.n()) * g.u()) % (g.n() * g.kernel_order()));
  const EdwardsPoint kernel_part = scalar_mul(g.curve(), nu, p);
  const RingElement z = g.exp().log(kernel_part);
  return {mod_e(p), z.residue() / g.context().prime()};
}

EdwardsPoint unsplit(const GroupContext& g, const SplitPoint& s) {
  if (!on_curve(g.residue_curve(), s.base)) throw Error(ErrorCode::NotOnCurve, s.base.to_string() + " is not on the reduced curve");
  if (s.c >= g.kernel_order()) throw Error(ErrorCode::InvalidContext, "c must lie in [0, p^(k-1))");
  const auto m = static_cast<std::int64_t>(g.kernel_order() * g.v());
  const EdwardsPoint section = scalar_mul(g.curve(), m, g.lift(s.base));
  const RingElement z = RingElement::from_residue(g.context(), s.c * g.context().prime());
  return edwards_add(g.curve(), section, g.exp().exp(z));
}

SplitPoint split_add(const GroupContext& g, const SplitPoint& a, const SplitPoint& b) {
  return {edwards_add(g.residue_curve(), a.base, b.base), (a.c + b.c) % g.kernel_order()};
}

SplitPoint parse_split_point(std::string_view text, const RingContext& ctx) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s.push_back(ch);
  }
  const auto close = s.find(')');
  if (s.size() < 9 || s.front() != '(' || s.back() != ')' || close == std::string::npos || close + 1 >= s.size() ||
      s[close + 1] != ',') {
    throw Error(ErrorCode::ParseError, "expected ((x, y), c): " + std::string(text));
  }
  const EdwardsPoint base = parse_edwards_point(s.substr(1, close), ctx.residue_field());
  const std::string c = s.substr(close + 2, s.size() - close - 3);
  const RingElement cv = parse_element(c, ctx.with_precision(std::max(1, ctx.precision() - 1)));
  return {base, ctx.precision() == 1 ? 0 : cv.residue()};
}

std::string BenchReport::to_json() const {
  const nlohmann::ordered_json j = {
      {"n_direct_ns", n_direct_ns},
      {"n_split_ns", n_split_ns},
      {"ratio", ratio},
      {"p", p},
      {"k", k},
      {"d", d},
      {"samples", samples},
      {"repetitions", repetitions},
      {"note", "split/unsplit conversion excluded; each conversion costs a scalar multiplication"},
  };
  return j.dump();
}

BenchReport bench_compare(const GroupContext& g, std::uint64_t samples, int repetitions, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  if (samples == 0 || repetitions < 1) throw Error(ErrorCode::InvalidContext, "bench needs samples >= 1 and repetitions >= 1");
  std::mt19937_64 rng(seed);
  const auto base_points = affine_points(g.residue_curve());
  std::uniform_int_distribution<std::size_t> pick(0, base_points.size() - 1);
  std::uniform_int_distribution<std::uint64_t> pick_c(0, g.kernel_order() - 1);
  // A small pool of random operands, converted once outside the timed loops.
  constexpr std::size_t kPool = 64;
  std::vector<SplitPoint> split_pool;
  std::vector<EdwardsPoint> direct_pool;
  for (std::size_t i = 0; i < kPool; ++i) {
    split_pool.push_back({base_points[pick(rng)], pick_c(rng)});
    direct_pool.push_back(unsplit(g, split_pool.back()));
  }
  BenchReport r;
  r.p = g.context().prime();
  r.k = g.context().precision();
  r.d = g.curve().d().residue();
  r.samples = samples;
  r.repetitions = repetitions;
  double direct_total = 0, split_total = 0;
  for (int rep = 0; rep < repetitions; ++rep) {
    EdwardsPoint acc = EdwardsPoint::neutral(g.context());
    auto t0 = Clock::now();
    for (std::uint64_t i = 0; i < samples; ++i) acc = edwards_add(g.curve(), acc, direct_pool[i % kPool]);
    auto t1 = Clock::now();
    SplitPoint sacc{EdwardsPoint::neutral(g.context().residue_field()), 0};
    auto t2 = Clock::now();
    for (std::uint64_t i = 0; i < samples; ++i) sacc = split_add(g, sacc, split_pool[i % kPool]);
    auto t3 = Clock::now();
    // Consistency of the two chains keeps the loops observable.
    if (!(split(g, acc) == sacc)) throw Error(ErrorCode::InternalNonUnimodular, "benchmark chains disagree");
    direct_total += std::chrono::duration<double, std::nano>(t1 - t0).count();
    split_total += std::chrono::duration<double, std::nano>(t3 - t2).count();
  }
  r.n_direct_ns = direct_total / repetitions;
  r.n_split_ns = split_total / repetitions;
  r.ratio = r.n_split_ns > 0 ? r.n_direct_ns / r.n_split_ns : 0;
  return r;
}

}  // namespace edpadic
