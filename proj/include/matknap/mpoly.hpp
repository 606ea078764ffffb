#pragma once

// Sparse multivariate polynomials with rational coefficients. Just enough
// algebra to expand products of closed-form powers symbolically.

#include "matknap/arith.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace matknap {

class MPoly {
 public:
  using Monomial = std::vector<unsigned>;  ///< exponent per variable, no trailing zeros

  MPoly() = default;
  MPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[{}] = c;
  }
  MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static MPoly var(std::size_t i) {
    Monomial m(i + 1);
    m[i] = 1;
    MPoly p;
    p.terms_[m] = 1;
    return p;
  }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(Monomial m) const {
    trim(m);
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  long degree() const {
    long d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) {
      long t = 0;
      for (unsigned e : m) t += e;
      d = std::max(d, t);
    }
    return d;
  }

  /// Part of total degree exactly d.
  MPoly homogeneous(long d) const {
    MPoly out;
    for (const auto& [m, c] : terms_) {
      long t = 0;
      for (unsigned e : m) t += e;
      if (t == d) out.terms_[m] = c;
    }
    return out;
  }

  Rational eval(const std::vector<Rational>& x) const {
    Rational s = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < m.size(); ++i) t *= pow(x.at(i), static_cast<long>(m[i]));
      s += t;
    }
    return s;
  }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(const MPoly& a) { return MPoly() - a; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(std::max(ma.size(), mb.size()));
        for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
        for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
        out.add_term(m, ca * cb);
      }
    return out;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.get_str() + ")";
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        out += "*" + (i < names.size() ? names[i] : "x" + std::to_string(i));
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
      }
    }
    return out;
  }

 private:
  static void trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
  }
  void add_term(Monomial m, const Rational& c) {
    if (c == 0) return;
    trim(m);
    Rational& slot = terms_[m];
    slot += c;
    if (slot == 0) terms_.erase(m);
  }

  std::map<Monomial, Rational> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

}  // namespace matknap
