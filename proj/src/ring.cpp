#include "edpadic/ring.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <ostream>
#include <utility>

#include "edpadic/error.hpp"

namespace edpadic {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

// Inverse of a unit modulo m by the extended Euclidean algorithm.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) noexcept {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

// Tonelli-Shanks in F_p; a must be a nonzero quadratic residue.
std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p) noexcept {
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = static_cast<std::uint64_t>(s);
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t t = powmod(a, q, p);
  std::uint64_t r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------- RingContext

RingContext::RingContext(std::uint64_t p, int k) : p_(p), k_(k), modulus_(1) {
  if (p < 5 || !is_prime(p)) {
    throw Error(ErrorCode::BadPrime, "p = " + std::to_string(p) + " must be a prime >= 5");
  }
  if (k < 1) throw Error(ErrorCode::InvalidContext, "precision k must be >= 1");
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  for (int i = 0; i < k; ++i) {
    if (modulus_ > kLimit / p) {
      throw Error(ErrorCode::InvalidContext, "p^k must stay below 2^62");
    }
    modulus_ *= p;
  }
}

std::uint64_t RingContext::prime_power(int j) const {
  if (j < 0 || j > k_) throw Error(ErrorCode::InvalidContext, "prime power out of range");
  std::uint64_t r = 1;
  for (int i = 0; i < j; ++i) r *= p_;
  return r;
}

RingContext RingContext::with_precision(int k) const {
  if (k < 1 || k > k_) {
    // Higher precision needs the overflow check of the public constructor.
    return RingContext(p_, k);
  }
  return RingContext(Trusted{}, p_, k, prime_power(k));
}

std::string RingContext::to_string() const {
  return std::to_string(p_) + "^" + std::to_string(k_);
}

RingContext RingContext::parse(std::string_view text) {
  const auto caret = text.find('^');
  std::uint64_t p = 0;
  int k = 1;
  auto parse_num = [&](std::string_view s, auto& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw Error(ErrorCode::ParseError, "bad ring context '" + std::string(text) + "'");
    }
  };
  if (caret == std::string_view::npos) {
    parse_num(text, p);
  } else {
    parse_num(text.substr(0, caret), p);
    parse_num(text.substr(caret + 1), k);
  }
  return RingContext(p, k);
}

// ---------------------------------------------------------------- RingElement

RingElement::RingElement(const RingContext& ctx, std::int64_t value) : ctx_(ctx), r_(0) {
  const auto m = static_cast<std::int64_t>(ctx.modulus());
  std::int64_t r = value % m;
  if (r < 0) r += m;
  r_ = static_cast<std::uint64_t>(r);
}

RingElement::RingElement(const RingContext& ctx, const mpz_class& value) : ctx_(ctx), r_(0) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  r_ = mpz_fdiv_ui(value.get_mpz_t(), static_cast<unsigned long>(ctx.modulus()));
}

RingElement RingElement::from_residue(const RingContext& ctx, std::uint64_t residue) {
  return RingElement(ctx, residue % ctx.modulus(), true);
}

int RingElement::valuation() const noexcept {
  if (r_ == 0) return ctx_.precision();
  int v = 0;
  std::uint64_t r = r_;
  while (r % ctx_.prime() == 0) {
    r /= ctx_.prime();
    ++v;
  }
  return v;
}

RingElement RingElement::inverse() const {
  if (!is_unit()) {
    throw Error(ErrorCode::NonUnit, std::to_string(r_) + " is not a unit mod " + ctx_.to_string());
  }
  return RingElement(ctx_, invmod(r_, ctx_.modulus()), true);
}

RingElement RingElement::pow(std::uint64_t e) const {
  return RingElement(ctx_, powmod(r_, e, ctx_.modulus()), true);
}

RingElement RingElement::operator-() const noexcept {
  return RingElement(ctx_, r_ == 0 ? 0 : ctx_.modulus() - r_, true);
}

void RingElement::check_same(const RingElement& o) const {
  if (!(ctx_ == o.ctx_)) {
    throw Error(ErrorCode::ContextMismatch, ctx_.to_string() + " vs " + o.ctx_.to_string());
  }
}

RingElement& RingElement::operator+=(const RingElement& o) {
  check_same(o);
  r_ += o.r_;
  if (r_ >= ctx_.modulus()) r_ -= ctx_.modulus();
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  check_same(o);
  r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + ctx_.modulus() - o.r_;
  return *this;
}

RingElement& RingElement::operator*=(const RingElement& o) {
  check_same(o);
  r_ = mulmod(r_, o.r_, ctx_.modulus());
  return *this;
}

std::ostream& operator<<(std::ostream& os, const RingElement& a) { return os << a.residue(); }

// ---------------------------------------------------------------- free functions

RingElement ring_op(const RingElement& a, const RingElement& b, RingOp kind) {
  switch (kind) {
    case RingOp::Add: return a + b;
    case RingOp::Sub: return a - b;
    case RingOp::Mul: return a * b;
  }
  return a;
}

RingElement invert(const RingElement& a) { return a.inverse(); }

int valuation(const RingElement& a) { return a.valuation(); }

QuadraticClass is_square_mod_p(const RingElement& a) {
  const std::uint64_t p = a.context().prime();
  const std::uint64_t r = a.residue() % p;
  if (r == 0) return QuadraticClass::ZeroResidue;
  return powmod(r, (p - 1) / 2, p) == 1 ? QuadraticClass::Residue : QuadraticClass::NonResidue;
}

std::string_view to_string(QuadraticClass c) {
  switch (c) {
    case QuadraticClass::Residue: return "true";
    case QuadraticClass::NonResidue: return "false";
    case QuadraticClass::ZeroResidue: return "ZeroResidue";
  }
  return "?";
}

RingElement sqrt_hensel(const RingElement& a) {
  const RingContext& ctx = a.context();
  const std::uint64_t p = ctx.prime();
  switch (is_square_mod_p(a)) {
    case QuadraticClass::ZeroResidue:
      throw Error(ErrorCode::ZeroResidue, a.to_string() + " is divisible by p");
    case QuadraticClass::NonResidue:
      throw Error(ErrorCode::NotASquare, a.to_string() + " is a nonresidue mod " + std::to_string(p));
    case QuadraticClass::Residue:
      break;
  }
  std::uint64_t root = sqrt_mod_prime(a.residue() % p, p);
  root = std::min(root, p - root);
  RingElement y = RingElement::from_residue(ctx, root);
  // Newton: the error valuation doubles each step.
  for (int precision = 1; precision < ctx.precision(); precision *= 2) {
    y -= (y * y - a) * (y * 2).inverse();
  }
  return y;
}

RingElement from_rational(const mpq_class& q, const RingContext& ctx) {
  // mpq_class is canonical: lowest terms, positive denominator.
  const mpz_class& den = q.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), ctx.prime()) != 0) {
    throw Error(ErrorCode::BadPrime, "denominator of " + q.get_str() + " is divisible by " +
                                         std::to_string(ctx.prime()));
  }
  return RingElement(ctx, q.get_num()) * RingElement(ctx, den).inverse();
}

RingElement from_rational(std::int64_t numerator, std::int64_t denominator, const RingContext& ctx) {
  if (denominator == 0) throw Error(ErrorCode::InvalidContext, "zero denominator");
  mpq_class q(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator)));
  q.canonicalize();
  return from_rational(q, ctx);
}

RingElement reduce_to(const RingElement& a, const RingContext& target) {
  if (target.prime() != a.context().prime() || target.precision() > a.context().precision()) {
    throw Error(ErrorCode::ContextMismatch,
                "cannot reduce " + a.context().to_string() + " to " + target.to_string());
  }
  return RingElement::from_residue(target, a.residue() % target.modulus());
}

RingElement least_lift(const RingElement& a, const RingContext& target) {
  if (target.prime() != a.context().prime() || target.precision() < a.context().precision()) {
    throw Error(ErrorCode::ContextMismatch,
                "cannot lift " + a.context().to_string() + " to " + target.to_string());
  }
  return RingElement::from_residue(target, a.residue());
}

RingElement parse_element(std::string_view text, const RingContext& ctx) {
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty number");
  mpz_class value;
  if (value.set_str(std::string(text), 10) != 0) {
    throw Error(ErrorCode::ParseError, "bad integer '" + std::string(text) + "'");
  }
  return RingElement(ctx, value);
}

}  // namespace edpadic
