#pragma once

#include "matknap/arith.hpp"
#include "matknap/matrix.hpp"

#include <cstddef>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

namespace matknap {

/// Univariate polynomial over Q, coefficients low degree first. The zero
/// polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(const Rational& v) { return Poly({v}); }
  static Poly x() { return Poly({0, 1}); }
  /// x - root
  static Poly linear(const Rational& root) { return Poly({-root, 1}); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Poly monic() const {
    if (is_zero()) return *this;
    Poly p = *this;
    Rational lc = leading();
    for (auto& x : p.c_) x /= lc;
    return p;
  }

  Poly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return Poly(std::move(d));
  }

  Rational operator()(const Rational& x) const {
    Rational r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  Mat operator()(const Mat& a) const {
    Mat r(a.dim());
    for (std::size_t i = c_.size(); i-- > 0;) {
      r = r * a;
      for (std::size_t d = 0; d < a.dim(); ++d) r(d, d) += c_[i];
    }
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend bool operator==(const Poly&, const Poly&) = default;

  /// (quotient, remainder)
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw invalid_input("polynomial division by zero");
    std::vector<Rational> rem = a.c_;
    long db = b.degree();
    std::vector<Rational> q(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0);
    for (long i = a.degree(); i >= db; --i) {
      Rational f = rem[static_cast<std::size_t>(i)] / b.leading();
      q[static_cast<std::size_t>(i - db)] = f;
      if (f == 0) continue;
      for (long j = 0; j <= db; ++j)
        rem[static_cast<std::size_t>(i - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    return {Poly(std::move(q)), Poly(std::move(rem))};
  }

  /// Monic gcd (zero if both are zero).
  friend Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (long i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Rational a = c < 0 ? Rational(-c) : c;
    if (a != 1 || i == 0) os << a.get_str();
    if (i > 0) os << "x";
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os;
}

/// Squarefree part p / gcd(p, p').
inline Poly squarefree_part(const Poly& p) {
  if (p.degree() <= 0) return p.monic();
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

/// Rational roots with multiplicities, ascending by root.
inline std::vector<std::pair<Rational, long>> rational_roots(const Poly& p) {
  std::vector<std::pair<Rational, long>> out;
  if (p.degree() <= 0) return out;
  Poly rest = p.monic();
  long zero_mult = 0;
  while (rest.degree() > 0 && rest.coeff(0) == 0) {
    rest = divmod(rest, Poly::x()).first;
    ++zero_mult;
  }
  if (zero_mult) out.emplace_back(Rational(0), zero_mult);
  if (rest.degree() <= 0) return out;

  // Integer coefficients: a0 ... an; a root p/q has p | a0, q | an.
  Integer den = 1;
  for (const auto& c : rest.coeffs()) den = lcm(den, c.get_den());
  std::vector<Integer> ic;
  for (const auto& c : rest.coeffs()) ic.push_back(c.get_num() * (den / c.get_den()));
  auto nums = divisors(ic.front());
  auto dens = divisors(ic.back());
  std::map<Rational, long> found;
  for (const auto& q : dens)
    for (const auto& a : nums)
      for (int sgn : {1, -1}) {
        Rational cand = make_rational(Integer(sgn * a), q);
        if (found.count(cand) || rest(cand) != 0) continue;
        long mult = 0;
        Poly lin = Poly::linear(cand);
        while (rest.degree() > 0) {
          auto [quo, rem] = divmod(rest, lin);
          if (!rem.is_zero()) break;
          rest = std::move(quo);
          ++mult;
        }
        found[cand] = mult;
      }
  for (auto& kv : found) out.push_back(kv);
  std::sort(out.begin(), out.end());
  return out;
}

/// Cyclotomic polynomial Phi_m.
inline Poly cyclotomic(long m) {
  static thread_local std::map<long, Poly> cache;
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  std::vector<Rational> c(static_cast<std::size_t>(m) + 1);
  c[0] = -1;
  c[static_cast<std::size_t>(m)] = 1;
  Poly p(std::move(c));
  for (long d = 1; d < m; ++d)
    if (m % d == 0) p = divmod(p, cyclotomic(d)).first;
  cache.emplace(m, p);
  return p;
}

inline long euler_phi(long m) {
  long result = m;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

/// All m with phi(m) <= n, ascending. phi(m) >= sqrt(m/2) bounds the search
/// by m <= 2n^2.
inline std::vector<long> cyclotomic_orders_up_to_degree(long n) {
  std::vector<long> out;
  for (long m = 1; m <= 2 * n * n + 2; ++m)
    if (euler_phi(m) <= n) out.push_back(m);
  return out;
}

}  // namespace matknap
