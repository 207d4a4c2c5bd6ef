#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace edpadic {

/// The truncated p-adic ring Z/p^k for a prime p >= 5 and precision k >= 1.
///
/// Contexts are small values; every RingElement carries one. Two contexts are
/// equal iff they have the same prime and precision.
class RingContext {
 public:
  /// Throws BadPrime unless p is a prime >= 5, InvalidContext unless k >= 1
  /// and p^k < 2^62.
  RingContext(std::uint64_t p, int k);

  std::uint64_t prime() const noexcept { return p_; }
  int precision() const noexcept { return k_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  /// p^j for 0 <= j <= k.
  std::uint64_t prime_power(int j) const;

  /// Z/p, the residue field.
  RingContext residue_field() const { return with_precision(1); }
  RingContext with_precision(int k) const;

  /// "p^k", e.g. "5^3".
  std::string to_string() const;
  static RingContext parse(std::string_view text);

  friend bool operator==(const RingContext& a, const RingContext& b) noexcept {
    return a.p_ == b.p_ && a.k_ == b.k_;
  }

 private:
  struct Trusted {};
  RingContext(Trusted, std::uint64_t p, int k, std::uint64_t modulus) noexcept
      : p_(p), k_(k), modulus_(modulus) {}

  std::uint64_t p_;
  int k_;
  std::uint64_t modulus_;
};

bool is_prime(std::uint64_t n) noexcept;

/// A residue of Z/p^k, always stored reduced into [0, p^k).
class RingElement {
 public:
  RingElement(const RingContext& ctx, std::int64_t value);
  RingElement(const RingContext& ctx, const mpz_class& value);

  static RingElement from_residue(const RingContext& ctx, std::uint64_t residue);
  static RingElement zero(const RingContext& ctx) { return from_residue(ctx, 0); }
  static RingElement one(const RingContext& ctx) { return from_residue(ctx, 1); }

  const RingContext& context() const noexcept { return ctx_; }
  std::uint64_t residue() const noexcept { return r_; }

  bool is_zero() const noexcept { return r_ == 0; }
  bool is_unit() const noexcept { return r_ % ctx_.prime() != 0; }
  /// Largest v <= k with p^v | residue; v(0) = k.
  int valuation() const noexcept;

  /// Throws NonUnit when p divides the residue.
  RingElement inverse() const;
  RingElement pow(std::uint64_t e) const;

  RingElement operator-() const noexcept;
  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const RingElement& o);

  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(RingElement a, const RingElement& b) { return a *= b; }
  friend RingElement operator*(RingElement a, std::int64_t s) {
    return a *= RingElement(a.ctx_, s);
  }
  friend RingElement operator*(std::int64_t s, RingElement a) { return std::move(a) * s; }
  friend RingElement operator+(RingElement a, std::int64_t s) {
    return a += RingElement(a.ctx_, s);
  }
  friend RingElement operator+(std::int64_t s, RingElement a) { return std::move(a) + s; }
  friend RingElement operator-(RingElement a, std::int64_t s) {
    return a -= RingElement(a.ctx_, s);
  }
  friend RingElement operator-(std::int64_t s, const RingElement& a) {
    return RingElement(a.ctx_, s) - a;
  }

  /// Exact equality; elements from different contexts are never equal.
  friend bool operator==(const RingElement& a, const RingElement& b) noexcept {
    return a.ctx_ == b.ctx_ && a.r_ == b.r_;
  }

  std::string to_string() const { return std::to_string(r_); }

 private:
  RingElement(const RingContext& ctx, std::uint64_t r, bool) noexcept : ctx_(ctx), r_(r) {}
  void check_same(const RingElement& o) const;

  RingContext ctx_;
  std::uint64_t r_;
};

std::ostream& operator<<(std::ostream& os, const RingElement& a);

enum class RingOp { Add, Sub, Mul };
RingElement ring_op(const RingElement& a, const RingElement& b, RingOp kind);

RingElement invert(const RingElement& a);
int valuation(const RingElement& a);

/// Three-valued quadratic character of a mod p.
enum class QuadraticClass { Residue, NonResidue, ZeroResidue };
QuadraticClass is_square_mod_p(const RingElement& a);
std::string_view to_string(QuadraticClass c);

/// Square root of a unit quadratic residue: the Hensel lift of the smaller of
/// the two roots mod p. Throws NotASquare or ZeroResidue.
RingElement sqrt_hensel(const RingElement& a);

/// numerator / denominator in Z/p^k after cancelling common factors.
/// Throws BadPrime when p still divides the denominator.
RingElement from_rational(std::int64_t numerator, std::int64_t denominator, const RingContext& ctx);
RingElement from_rational(const mpq_class& q, const RingContext& ctx);

/// Reduction Z/p^k -> Z/p^j for j <= k.
RingElement reduce_to(const RingElement& a, const RingContext& target);
/// The least lift Z/p^j -> Z/p^k (the residue read as an integer).
RingElement least_lift(const RingElement& a, const RingContext& target);

RingElement parse_element(std::string_view text, const RingContext& ctx);

}  // namespace edpadic
