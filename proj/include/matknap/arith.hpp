#pragma once

// Exact scalar arithmetic: big integers and rationals on top of GMP, prime
// factorization and S-unit exponent vectors over the rationals.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace matknap {

using Integer = mpz_class;
/// Always canonical: every constructor path below calls canonicalize().
using Rational = mpq_class;

/// Malformed input: bad literals, dimension mismatches. CLI exit code 2.
class invalid_input : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but violates an operation's precondition
/// (singular matrix, non-commuting family, ...). CLI exit code 3.
class precondition_error : public std::domain_error {
  using std::domain_error::domain_error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw invalid_input("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

/// Parses "p", "-p" or "p/q". Result is canonicalized.
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0)
      throw invalid_input("malformed rational literal: '" + text + "'");
    return z;
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  return make_rational(parse_int(text.substr(0, slash)),
                       parse_int(text.substr(slash + 1)));
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer abs_int(const Integer& z) { return z < 0 ? Integer(-z) : z; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// g = s*a + t*b with g = gcd(a, b) >= 0.
struct ExtendedGcd {
  Integer g, s, t;
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Nearest integer, ties rounded toward +infinity.
inline Integer round_rational(const Rational& q) {
  Rational shifted = q + Rational(1, 2);
  return floor_div(shifted.get_num(), shifted.get_den());
}

inline Rational pow(const Rational& base, long k) {
  if (k == 0) return Rational(1);
  if (k < 0) {
    if (base == 0) throw precondition_error("zero raised to a negative power");
    Rational inv(base.get_den(), base.get_num());
    inv.canonicalize();
    return pow(inv, -k);
  }
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(),
             static_cast<unsigned long>(k));
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(),
             static_cast<unsigned long>(k));
  r.canonicalize();
  return r;
}

inline Integer pow(const Integer& base, unsigned long k) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), k);
  return r;
}

/// Conversion for exponents and counters that are known to be small.
inline long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer exceeds long: " + z.get_str());
  return z.get_si();
}

// ---------------------------------------------------------------------------
// Factorization

namespace detail {

inline constexpr std::uint32_t kTrialLimit = 1'000'000;

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i)
        composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline bool is_probable_prime(const Integer& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

// Brent's variant of Pollard rho; n must be composite and odd.
inline Integer pollard_rho(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    auto step = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    unsigned long r = 1;
    const unsigned long m = 128;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = q * abs_int(x - y) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs_int(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_large(const Integer& n, std::map<Integer, long>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_rho(n);
  factor_large(d, out);
  factor_large(Integer(n / d), out);
}

}  // namespace detail

/// sign * prod primes[i]^exponents[i]. Primes are ascending for factorize();
/// sunit_vector() keeps the caller's prime order and zero-pads.
struct PrimeExpVec {
  int sign = 1;
  std::vector<Integer> primes;
  std::vector<long> exponents;

  Rational reconstruct() const {
    Rational r(sign);
    for (std::size_t i = 0; i < primes.size(); ++i)
      r *= pow(Rational(primes[i]), exponents[i]);
    return r;
  }

  friend bool operator==(const PrimeExpVec&, const PrimeExpVec&) = default;
};

inline PrimeExpVec factorize(const Integer& n) {
  if (n == 0) throw invalid_input("factorize: zero has no factorization");
  PrimeExpVec out;
  out.sign = n < 0 ? -1 : 1;
  Integer rest = abs_int(n);
  std::map<Integer, long> found;
  for (std::uint32_t p : detail::small_primes()) {
    if (Integer(p) * p > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      long e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      found[Integer(p)] = e;
    }
  }
  if (rest > 1) {
    Integer limit = detail::kTrialLimit;
    if (rest <= limit * limit)
      ++found[rest];
    else
      detail::factor_large(rest, found);
  }
  for (auto& [p, e] : found) {
    out.primes.push_back(p);
    out.exponents.push_back(e);
  }
  return out;
}

inline PrimeExpVec factorize(long n) { return factorize(Integer(n)); }

/// Primes dividing numerator or denominator of q, ascending.
inline std::vector<Integer> prime_support(const Rational& q) {
  std::vector<Integer> out;
  for (const Integer* part : {&q.get_num(), &q.get_den()}) {
    if (abs_int(*part) <= 1) continue;
    auto f = factorize(*part);
    out.insert(out.end(), f.primes.begin(), f.primes.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Exponent vector of q over the given prime list.
inline PrimeExpVec sunit_vector(const Rational& q, const std::vector<Integer>& primes) {
  if (q == 0) throw invalid_input("sunit_vector: zero is not an S-unit");
  PrimeExpVec out;
  out.sign = q < 0 ? -1 : 1;
  out.primes = primes;
  out.exponents.assign(primes.size(), 0);
  Integer num = abs_int(q.get_num());
  Integer den = q.get_den();
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const Integer& p = primes[i];
    while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
      ++out.exponents[i];
    }
    while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
      --out.exponents[i];
    }
  }
  if (num != 1 || den != 1)
    throw precondition_error("sunit_vector: " + q.get_str() +
                             " has a prime outside the given set");
  return out;
}

/// All positive divisors of |n|, ascending.
inline std::vector<Integer> divisors(const Integer& n) {
  auto f = factorize(n);
  std::vector<Integer> out{1};
  for (std::size_t i = 0; i < f.primes.size(); ++i) {
    std::size_t base = out.size();
    Integer pk = 1;
    for (long e = 1; e <= f.exponents[i]; ++e) {
      pk *= f.primes[i];
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace matknap
