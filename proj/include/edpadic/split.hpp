#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "edpadic/exp_map.hpp"

namespace edpadic {

/// P over Z/p^k written as (P mod p, c) with P = sigma(P mod p) + Exp_E(p c).
struct SplitPoint {
  EdwardsPoint base;  // over F_p
  std::uint64_t c = 0;  // in [0, p^(k-1))

  friend bool operator==(const SplitPoint&, const SplitPoint&) = default;
  /// "((x, y), c)".
  std::string to_string() const;
};

/// Orders and idempotents for one non-anomalous configuration:
/// n = |E(F_p)|, u = n^-1 mod p^(k-1), v = (p^(k-1))^-1 mod n.
/// The section is sigma(Pbar) = (p^(k-1) v) lift(Pbar).
class GroupContext {
 public:
  /// Throws Anomalous when p divides n.
  explicit GroupContext(ExpContext exp);

  const ExpContext& exp() const noexcept { return exp_; }
  const EdwardsCurve& curve() const noexcept { return exp_.curve(); }
  const EdwardsCurve& residue_curve() const noexcept { return residue_curve_; }
  const RingContext& context() const noexcept { return exp_.context(); }

  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t u() const noexcept { return u_; }
  std::uint64_t v() const noexcept { return v_; }
  /// p^(k-1), the order of the kernel of reduction.
  std::uint64_t kernel_order() const noexcept { return q_; }

  /// A point over Z/p^k above pbar, transported through the bridge and a
  /// Weierstrass Hensel lift.
  EdwardsPoint lift(const EdwardsPoint& pbar) const;

 private:
  ExpContext exp_;
  Bridge residue_bridge_;
  EdwardsCurve residue_curve_;
  std::uint64_t n_, u_, v_, q_;
};

GroupContext make_group_context(const ExpContext& exp);

/// Throws Anomalous if |E(F_p)| = p; returns the order otherwise.
std::uint64_t require_non_anomalous(const ShortWCurve& c);

SplitPoint split(const GroupContext& g, const EdwardsPoint& p);
EdwardsPoint unsplit(const GroupContext& g, const SplitPoint& s);
SplitPoint split_add(const GroupContext& g, const SplitPoint& a, const SplitPoint& b);

SplitPoint parse_split_point(std::string_view text, const RingContext& ctx);

struct BenchReport {
  double n_direct_ns = 0;  // mean wall time of `samples` direct additions
  double n_split_ns = 0;   // mean wall time of `samples` split additions
  double ratio = 0;        // n_direct_ns / n_split_ns
  std::uint64_t p = 0;
  int k = 0;
  std::uint64_t d = 0;
  std::uint64_t samples = 0;
  int repetitions = 0;

  /// JSON object with the fields above plus a note on conversion cost.
  std::string to_json() const;
};

/// Times `samples` chained additions in both representations, `repetitions`
/// times each; split/unsplit conversion is excluded from the timed loops.
BenchReport bench_compare(const GroupContext& g, std::uint64_t samples, int repetitions, std::uint64_t seed = 1);

}  // namespace edpadic
