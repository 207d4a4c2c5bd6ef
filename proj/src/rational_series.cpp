#include "edpadic/rational_series.hpp"

#include <algorithm>
#include <climits>

namespace edpadic {

int padic_valuation(const Rational& q, std::uint64_t p) {
  if (sgn(q) == 0) return INT_MAX;
  const mpz_class prime(static_cast<unsigned long>(p));
  auto count = [&](mpz_class n) {
    int v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), prime.get_mpz_t()) != 0) {
      n /= prime;
      ++v;
    }
    return v;
  };
  return count(abs(q.get_num())) - count(q.get_den());
}

GPoly::GPoly(const Rational& c) { add_term({0, 0}, c); }

GPoly GPoly::g2() { return monomial(Rational(1), 1, 0); }
GPoly GPoly::g3() { return monomial(Rational(1), 0, 1); }

GPoly GPoly::monomial(const Rational& c, int g2_power, int g3_power) {
  GPoly out;
  out.add_term({g2_power, g3_power}, c);
  return out;
}

void GPoly::add_term(const Exponents& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

bool GPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0});
}

Rational GPoly::constant_term() const { return coefficient(0, 0); }

Rational GPoly::coefficient(int g2_power, int g3_power) const {
  auto it = terms_.find({g2_power, g3_power});
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational GPoly::evaluate(const Rational& g2, const Rational& g3) const {
  Rational out(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < e.first; ++i) t *= g2;
    for (int i = 0; i < e.second; ++i) t *= g3;
    out += t;
  }
  return out;
}

GPoly& GPoly::operator+=(const GPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

GPoly& GPoly::operator-=(const GPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

GPoly GPoly::operator-() const {
  GPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

GPoly operator*(const GPoly& a, const GPoly& b) {
  GPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea.first + eb.first, ea.second + eb.second}, Rational(ca * cb));
    }
  }
  return out;
}

std::string GPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.get_str();
    if (e.first > 0) out += "·g2" + (e.first > 1 ? "^" + std::to_string(e.first) : std::string());
    if (e.second > 0) out += "·g3" + (e.second > 1 ? "^" + std::to_string(e.second) : std::string());
  }
  return out;
}

int truncation_order(const RingContext& ctx) {
  const int k = ctx.precision();
  int M = 2;
  while (2 * M - 2 <= k) ++M;
  return M;
}

std::vector<RingElement> reduce_series(const Series<Rational>& s, const RingContext& ctx) {
  std::vector<RingElement> out;
  out.reserve(s.coefficients().size());
  for (const Rational& c : s.coefficients()) out.push_back(from_rational(c, ctx));
  return out;
}

int kernel_last_exponent(const RingContext& ctx) {
  const int p = static_cast<int>(std::min<std::uint64_t>(ctx.prime(), 1u << 20));
  const int k = ctx.precision();
  int m = 0;
  while ((m + 1) - (m + 1) / (p - 1) < k) ++m;
  return m;
}

ScaledSeries::ScaledSeries(const Series<Rational>& s, const RingContext& ctx, int last) : ctx_(ctx) {
  if (s.low() < 0 || s.order() <= last) {
    throw Error(ErrorCode::InvalidContext, "series is not a power series known through z^" + std::to_string(last));
  }
  const mpz_class p(static_cast<unsigned long>(ctx.prime()));
  mpz_class pm = 1;
  q_.reserve(static_cast<std::size_t>(last + 1));
  for (int m = 0; m <= last; ++m) {
    q_.push_back(from_rational(Rational(s.coeff(m) * pm), ctx));
    pm *= p;
  }
}

RingElement ScaledSeries::evaluate(const RingElement& z) const {
  if (!(z.context() == ctx_)) throw Error(ErrorCode::ContextMismatch, "evaluation point from another ring");
  if (z.valuation() < 1) throw Error(ErrorCode::BadValuation, "z must lie in the maximal ideal");
  const auto h = RingElement::from_residue(ctx_, z.residue() / ctx_.prime());
  RingElement acc = RingElement::zero(ctx_);
  for (auto it = q_.rbegin(); it != q_.rend(); ++it) acc = acc * h + *it;
  return acc;
}

std::vector<std::tuple<int, mpz_class, mpz_class>> to_triples(const Series<Rational>& s) {
  std::vector<std::tuple<int, mpz_class, mpz_class>> out;
  for (int e = s.low(); e < s.order(); ++e) {
    const Rational c = s.coeff(e);
    if (sgn(c) != 0) out.emplace_back(e, c.get_num(), c.get_den());
  }
  return out;
}

WeierstrassParams<Rational> numeric_params(const Rational& g2, const Rational& g3) { return {g2, g3}; }

}  // namespace edpadic
