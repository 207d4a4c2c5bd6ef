#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "edpadic/error.hpp"
#include "edpadic/ring.hpp"

namespace edpadic {

/// Exact rational number; GMP keeps it in lowest terms with a positive denominator.
using Rational = mpq_class;

/// p-adic valuation of a nonzero rational; INT_MAX for zero.
int padic_valuation(const Rational& q, std::uint64_t p);

/// A polynomial in the two curve invariants g2, g3 with rational coefficients.
/// Used to carry the series coefficients symbolically.
class GPoly {
 public:
  using Exponents = std::pair<int, int>;  // (power of g2, power of g3)

  GPoly() = default;
  GPoly(long c) : GPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  GPoly(const Rational& c);              // NOLINT(google-explicit-constructor)

  static GPoly g2();
  static GPoly g3();
  static GPoly monomial(const Rational& c, int g2_power, int g3_power);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rational constant_term() const;
  Rational coefficient(int g2_power, int g3_power) const;
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }

  /// Substitute numeric invariants.
  Rational evaluate(const Rational& g2, const Rational& g3) const;

  GPoly& operator+=(const GPoly& o);
  GPoly& operator-=(const GPoly& o);
  GPoly operator-() const;
  friend GPoly operator+(GPoly a, const GPoly& b) { return a += b; }
  friend GPoly operator-(GPoly a, const GPoly& b) { return a -= b; }
  friend GPoly operator*(const GPoly& a, const GPoly& b);
  friend bool operator==(const GPoly& a, const GPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const GPoly& a, const GPoly& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  std::map<Exponents, Rational> terms_;
};

/// Operations the series code needs from a coefficient type beyond + - *.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static Rational invert_constant(const Rational& c) {
    if (sgn(c) == 0) throw Error(ErrorCode::NotReversible, "zero leading coefficient");
    return Rational(1) / c;
  }
  static std::string to_string(const Rational& c) { return c.get_str(); }
};

template <>
struct CoeffTraits<GPoly> {
  static GPoly from_rational(const Rational& q) { return GPoly(q); }
  static bool is_zero(const GPoly& c) { return c.is_zero(); }
  static GPoly invert_constant(const GPoly& c) {
    if (!c.is_constant() || c.is_zero()) {
      throw Error(ErrorCode::NotReversible, "leading coefficient " + c.to_string() + " is not a nonzero constant");
    }
    return GPoly(Rational(1) / c.constant_term());
  }
  static std::string to_string(const GPoly& c) {
    return c.terms().size() > 1 ? "(" + c.to_string() + ")" : c.to_string();
  }
};

/// A truncated formal Laurent series sum_{e = low}^{order-1} c_e z^e + O(z^order).
///
/// Arithmetic propagates the truncation order: a sum keeps the smaller order, a
/// product keeps min(a.order + b.low, b.order + a.low).
template <class C>
class Series {
 public:
  using Traits = CoeffTraits<C>;

  Series() : low_(0), order_(0) {}
  Series(int low, int order, std::vector<C> coeffs) : low_(low), order_(order), coeffs_(std::move(coeffs)) {
    if (order_ < low_) order_ = low_;
    if (static_cast<int>(coeffs_.size()) != order_ - low_) {
      throw Error(ErrorCode::InvalidContext, "series coefficient count does not match its truncation order");
    }
  }

  /// c z^e + O(z^order).
  static Series monomial(const C& c, int e, int order) {
    std::vector<C> coeffs(static_cast<std::size_t>(std::max(0, order - e)), C(0));
    if (!coeffs.empty()) coeffs[0] = c;
    return Series(e, std::max(order, e), std::move(coeffs));
  }
  /// The exact series z, with no truncation up to `order`.
  static Series variable(int order) { return monomial(C(1), 1, order); }

  int low() const noexcept { return low_; }
  int order() const noexcept { return order_; }
  const std::vector<C>& coefficients() const noexcept { return coeffs_; }

  /// Coefficient of z^e for e < order.
  C coeff(int e) const {
    if (e >= order_) throw Error(ErrorCode::InvalidContext, "coefficient beyond truncation order");
    if (e < low_) return C(0);
    return coeffs_[static_cast<std::size_t>(e - low_)];
  }

  /// Lowest exponent with a nonzero known coefficient, or `order` if none.
  int valuation() const {
    for (int e = low_; e < order_; ++e) {
      if (!Traits::is_zero(coeffs_[static_cast<std::size_t>(e - low_)])) return e;
    }
    return order_;
  }

  Series truncated(int order) const {
    order = std::min(order, order_);
    const int low = std::min(low_, order);
    std::vector<C> c;
    for (int e = low; e < order; ++e) c.push_back(coeff(e));
    return Series(low, order, std::move(c));
  }

  friend Series operator+(const Series& a, const Series& b) { return combine(a, b, false); }
  friend Series operator-(const Series& a, const Series& b) { return combine(a, b, true); }

  friend Series operator*(const Series& a, const Series& b) {
    const int low = a.low_ + b.low_;
    const int order = std::min(a.order_ + b.low_, b.order_ + a.low_);
    std::vector<C> out(static_cast<std::size_t>(std::max(0, order - low)), C(0));
    for (int i = a.low_; i < a.order_; ++i) {
      const C& ai = a.coeffs_[static_cast<std::size_t>(i - a.low_)];
      if (Traits::is_zero(ai)) continue;
      for (int j = b.low_; j < b.order_ && i + j < order; ++j) {
        const C& bj = b.coeffs_[static_cast<std::size_t>(j - b.low_)];
        if (Traits::is_zero(bj)) continue;
        C t = ai * bj;
        out[static_cast<std::size_t>(i + j - low)] += t;
      }
    }
    return Series(low, std::max(low, order), std::move(out));
  }

  Series scaled(const C& s) const {
    std::vector<C> out;
    out.reserve(coeffs_.size());
    for (const C& c : coeffs_) {
      C t = c * s;
      out.push_back(std::move(t));
    }
    return Series(low_, order_, std::move(out));
  }

  /// Multiply by z^shift.
  Series shifted(int shift) const { return Series(low_ + shift, order_ + shift, coeffs_); }

  Series derivative() const {
    std::vector<C> out;
    for (int e = low_; e < order_; ++e) {
      C t = coeff(e) * C(static_cast<long>(e));
      out.push_back(std::move(t));
    }
    return Series(low_ - 1, order_ - 1, std::move(out));
  }

  /// 1 / s; the leading coefficient must be an invertible constant.
  Series reciprocal() const {
    const int v = valuation();
    if (v >= order_) throw Error(ErrorCode::NotReversible, "series has no known nonzero term");
    const int n = order_ - v;  // relative precision
    const C lead_inv = Traits::invert_constant(coeff(v));
    std::vector<C> inv(static_cast<std::size_t>(n), C(0));
    inv[0] = lead_inv;
    for (int m = 1; m < n; ++m) {
      C acc(0);
      for (int j = 1; j <= m; ++j) {
        C t = coeff(v + j) * inv[static_cast<std::size_t>(m - j)];
        acc += t;
      }
      C t = -(acc * lead_inv);
      inv[static_cast<std::size_t>(m)] = std::move(t);
    }
    return Series(-v, -v + n, std::move(inv));
  }

  friend Series operator/(const Series& a, const Series& b) { return a * b.reciprocal(); }

  /// this(inner(z)) for this a power series (low >= 0) and inner in zO(z).
  Series compose(const Series& inner) const {
    const int v = inner.valuation();
    if (v < 1 || v >= inner.order_ || low_ < 0) {
      throw Error(ErrorCode::NotReversible, "composition needs a power series and an inner series in zO(z)");
    }
    // inner^j is known to order inner.order + (j-1)v; the first j >= 1 limits precision.
    const int first = std::max(1, low_);
    const int order = std::min(order_ * v, inner.order_ + (first - 1) * v);
    Series result = Series::monomial(low_ == 0 && order_ > 0 ? coeff(0) : C(0), 0, order);
    Series power = inner.truncated(order);
    for (int j = 1; j < order_ && j * v < order; ++j) {
      if (j > 1) power = (power * inner).truncated(order);
      if (j < low_) continue;
      const C& cj = coeff(j);
      if (Traits::is_zero(cj)) continue;
      result = result + power.scaled(cj);
    }
    return result.truncated(order);
  }

  /// Compositional inverse r with r(s(z)) = z; requires s = c z + ..., c an
  /// invertible constant.
  Series revert() const {
    if (low_ > 1 || order_ <= 1 || !Traits::is_zero(coeff(0)) || Traits::is_zero(coeff(1))) {
      throw Error(ErrorCode::NotReversible, "reversion needs a series c z + O(z^2) with c invertible");
    }
    for (int e = low_; e < 0; ++e) {
      if (!Traits::is_zero(coeff(e))) throw Error(ErrorCode::NotReversible, "negative exponent present");
    }
    const int n = order_;
    const C lead_inv = Traits::invert_constant(coeff(1));
    Series s = truncated(n);
    // powers[j] = s^j
    std::vector<Series> powers{Series::monomial(C(1), 0, n), s};
    for (int j = 2; j < n; ++j) powers.push_back((powers.back() * s).truncated(n));
    std::vector<C> r(static_cast<std::size_t>(n), C(0));  // r[e] = coefficient of z^e
    std::vector<C> lead_inv_pow{C(1), lead_inv};
    for (int j = 2; j < n; ++j) {
      C t = lead_inv_pow.back() * lead_inv;
      lead_inv_pow.push_back(std::move(t));
    }
    r[1] = lead_inv;
    for (int m = 2; m < n; ++m) {
      C acc(0);
      for (int j = 1; j < m; ++j) {
        if (Traits::is_zero(r[static_cast<std::size_t>(j)])) continue;
        C t = r[static_cast<std::size_t>(j)] * powers[static_cast<std::size_t>(j)].coeff(m);
        acc += t;
      }
      C t = -(acc * lead_inv_pow[static_cast<std::size_t>(m)]);
      r[static_cast<std::size_t>(m)] = std::move(t);
    }
    return Series(0, n, std::move(r));
  }

  /// Coefficient-wise equality up to the smaller truncation order.
  friend bool agree(const Series& a, const Series& b) {
    const int order = std::min(a.order_, b.order_);
    const int low = std::min(a.low_, b.low_);
    for (int e = low; e < order; ++e) {
      if (!(a.coeff(e) == b.coeff(e))) return false;
    }
    return true;
  }

  /// "c·z^e + ... + O(z^order)", skipping zero terms.
  std::string to_string() const {
    std::string out;
    for (int e = low_; e < order_; ++e) {
      const C& c = coeffs_[static_cast<std::size_t>(e - low_)];
      if (Traits::is_zero(c)) continue;
      if (!out.empty()) out += " + ";
      out += Traits::to_string(c) + "·z^" + std::to_string(e);
    }
    if (!out.empty()) out += " + ";
    return out + "O(z^" + std::to_string(order_) + ")";
  }

 private:
  static Series combine(const Series& a, const Series& b, bool subtract) {
    const int order = std::min(a.order_, b.order_);
    const int low = std::min(std::min(a.low_, b.low_), order);
    std::vector<C> out;
    for (int e = low; e < order; ++e) {
      C x = e >= a.low_ ? a.coeff(e) : C(0);
      C y = e >= b.low_ ? b.coeff(e) : C(0);
      if (subtract) {
        x -= y;
      } else {
        x += y;
      }
      out.push_back(std::move(x));
    }
    return Series(low, order, std::move(out));
  }

  int low_;
  int order_;
  std::vector<C> coeffs_;
};

/// The invariants of y^2 = 4x^3 - g2 x - g3.
template <class C>
struct WeierstrassParams {
  C g2;
  C g3;
};

using SymbolicParams = WeierstrassParams<GPoly>;
inline SymbolicParams symbolic_params() { return {GPoly::g2(), GPoly::g3()}; }

/// c_2 .. c_M of wp(z) = z^-2 + sum c_k z^(2k-2):
/// c_2 = g2/20, c_3 = g3/28, c_k = 3/((2k+1)(k-3)) sum_{m=2}^{k-2} c_m c_{k-m}.
template <class C>
std::vector<C> wp_coefficients(const WeierstrassParams<C>& params, int M) {
  if (M < 2) throw Error(ErrorCode::InvalidContext, "wp_coefficients needs M >= 2");
  using T = CoeffTraits<C>;
  std::vector<C> c(static_cast<std::size_t>(M + 1), C(0));  // c[k]; c[0], c[1] unused
  c[2] = params.g2 * T::from_rational(Rational(1, 20));
  if (M >= 3) c[3] = params.g3 * T::from_rational(Rational(1, 28));
  for (int k = 4; k <= M; ++k) {
    C sum(0);
    for (int m = 2; m <= k - 2; ++m) {
      C t = c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(k - m)];
      sum += t;
    }
    Rational factor(3, (2 * k + 1) * (k - 3));
    factor.canonicalize();
    c[static_cast<std::size_t>(k)] = sum * T::from_rational(factor);
  }
  return std::vector<C>(c.begin() + 2, c.end());
}

/// wp(z) with every term of exponent < 2M - 2 present.
template <class C>
Series<C> wp_series(const WeierstrassParams<C>& params, int M) {
  const auto c = wp_coefficients(params, M);
  const int low = -2;
  const int order = 2 * M - 2;
  std::vector<C> coeffs(static_cast<std::size_t>(order - low), C(0));
  coeffs[0] = C(1);
  for (int k = 2; 2 * k - 2 < order; ++k) {
    coeffs[static_cast<std::size_t>(2 * k - 2 - low)] = c[static_cast<std::size_t>(k - 2)];
  }
  return Series<C>(low, order, std::move(coeffs));
}

/// wp'(z) with every term of exponent < 2M - 3 present.
template <class C>
Series<C> wp_prime_series(const WeierstrassParams<C>& params, int M) {
  const auto c = wp_coefficients(params, M);
  const int low = -3;
  const int order = 2 * M - 3;
  std::vector<C> coeffs(static_cast<std::size_t>(order - low), C(0));
  coeffs[0] = C(-2);
  for (int k = 2; 2 * k - 3 < order; ++k) {
    C t = c[static_cast<std::size_t>(k - 2)] * C(static_cast<long>(2 * k - 2));
    coeffs[static_cast<std::size_t>(2 * k - 3 - low)] = std::move(t);
  }
  return Series<C>(low, order, std::move(coeffs));
}

/// (wp'/2)^2 - wp^3 + (g2/4) wp + g3/4, expanded to its joint truncation order.
template <class C>
Series<C> differential_residual(const WeierstrassParams<C>& params, const std::vector<C>& c_override, int M) {
  using T = CoeffTraits<C>;
  Series<C> wp = wp_series(params, M);
  Series<C> wpp = wp_prime_series(params, M);
  if (!c_override.empty()) {
    // Rebuild both series from explicit coefficients c_2, c_3, ...
    std::vector<C> a(wp.coefficients().size(), C(0)), b(wpp.coefficients().size(), C(0));
    a[0] = C(1);
    b[0] = C(-2);
    for (int k = 2; k - 2 < static_cast<int>(c_override.size()); ++k) {
      const C& ck = c_override[static_cast<std::size_t>(k - 2)];
      if (2 * k - 2 < wp.order()) a[static_cast<std::size_t>(2 * k)] = ck;
      if (2 * k - 3 < wpp.order()) {
        C t = ck * C(static_cast<long>(2 * k - 2));
        b[static_cast<std::size_t>(2 * k)] = std::move(t);
      }
    }
    wp = Series<C>(wp.low(), wp.order(), std::move(a));
    wpp = Series<C>(wpp.low(), wpp.order(), std::move(b));
  }
  const Series<C> half_wpp = wpp.scaled(T::from_rational(Rational(1, 2)));
  const C quarter = T::from_rational(Rational(1, 4));
  C g2q = params.g2 * quarter;
  C g3q = params.g3 * quarter;
  const Series<C> lhs = half_wpp * half_wpp - wp * wp * wp + wp.scaled(g2q);
  return lhs + Series<C>::monomial(g3q, 0, lhs.order());
}

/// True iff every computable coefficient of (wp'/2)^2 - wp^3 + (g2/4)wp + g3/4 vanishes.
template <class C>
bool verify_differential_identity(const WeierstrassParams<C>& params, int M, const std::vector<C>& c_override = {}) {
  if (M < 4) throw Error(ErrorCode::InvalidContext, "the identity check needs M >= 4");
  const Series<C> r = differential_residual(params, c_override, M);
  return r.valuation() >= r.order();
}

/// -2 wp(z) / wp'(z) as a power series z + (g2/10) z^5 + ...
template <class C>
Series<C> inverse_parameter_series(const WeierstrassParams<C>& params, int M) {
  const Series<C> wp = wp_series(params, M);
  const Series<C> wpp = wp_prime_series(params, M);
  return (wp / wpp).scaled(C(-2));
}

template <class C>
Series<C> revert_series(const Series<C>& s) {
  return s.revert();
}

/// Minimal M with 2M - 2 > k: with integral coefficients every dropped term of
/// wp vanishes mod p^k at any z of valuation >= 1.
int truncation_order(const RingContext& ctx);

/// Coefficients (from the lowest exponent up) mapped into Z/p^k.
/// Throws BadPrime if a retained denominator is divisible by p.
std::vector<RingElement> reduce_series(const Series<Rational>& s, const RingContext& ctx);

/// Largest exponent m whose term can matter mod p^k when the m-th coefficient
/// has p-adic valuation >= -floor(m/(p-1)) and z has valuation >= 1: the last m
/// before m - floor(m/(p-1)) reaches k for good.
int kernel_last_exponent(const RingContext& ctx);

/// A power series prepared for evaluation at z = p*h in Z/p^k: the m-th term is
/// stored as Q_m = c_m p^m reduced mod p^k and evaluated as Q_m h^m. This keeps
/// coefficients whose denominators contain p (but whose scaled term is still
/// integral) usable.
class ScaledSeries {
 public:
  /// Uses the terms of exponent 0..last; throws BadPrime if some Q_m is not
  /// p-integral and InvalidContext if `s` is not known that far.
  ScaledSeries(const Series<Rational>& s, const RingContext& ctx, int last);

  const RingContext& context() const noexcept { return ctx_; }
  const std::vector<RingElement>& terms() const noexcept { return q_; }

  /// Throws BadValuation if v(z) = 0.
  RingElement evaluate(const RingElement& z) const;

 private:
  RingContext ctx_;
  std::vector<RingElement> q_;
};

/// Machine format: (exponent, numerator, denominator) for every nonzero term.
std::vector<std::tuple<int, mpz_class, mpz_class>> to_triples(const Series<Rational>& s);

/// Numeric parameters from integer invariants.
WeierstrassParams<Rational> numeric_params(const Rational& g2, const Rational& g3);

}  // namespace edpadic
