#pragma once

// Characteristic polynomials, rational diagonalization, simultaneous
// diagonalization of commuting families and finite-order detection.

#include "matknap/arith.hpp"
#include "matknap/matrix.hpp"
#include "matknap/poly.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

namespace matknap {

/// det(xI - A), monic of degree n. Berkowitz's division-free recursion on
/// the integer matrix M = d*A, rescaled at the end.
inline Poly char_poly(const Mat& a) {
  const std::size_t n = a.dim();
  auto cl = clear_denominators(a);
  const auto& m = cl.m;
  // v holds coefficients high degree first.
  std::vector<Integer> v{1, Integer(-m[0][0])};
  for (std::size_t r = 1; r < n; ++r) {
    // Toeplitz column: 1, -a_rr, -R C, -R A C, -R A^2 C, ...
    std::vector<Integer> col{1, Integer(-m[r][r])};
    std::vector<Integer> c(r);
    for (std::size_t i = 0; i < r; ++i) c[i] = m[i][r];
    for (std::size_t step = 0; step < r; ++step) {
      Integer rc = 0;
      for (std::size_t i = 0; i < r; ++i) rc += m[r][i] * c[i];
      col.push_back(-rc);
      std::vector<Integer> next(r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] += m[i][j] * c[j];
      c = std::move(next);
    }
    std::vector<Integer> w(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) w[i] += col[i - j] * v[j];
    v = std::move(w);
  }
  // v[i] is the coefficient of x^(n-i) for M; for A = M/d divide by d^i.
  std::vector<Rational> coeffs(n + 1);
  Rational scale = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    coeffs[n - i] = Rational(v[i]) / scale;
    scale *= cl.den;
  }
  return Poly(std::move(coeffs));
}

/// True iff the minimal polynomial is squarefree, i.e. the squarefree part of
/// the characteristic polynomial annihilates A.
inline bool is_diagonalizable(const Mat& a) {
  return squarefree_part(char_poly(a))(a).is_zero();
}

using Column = std::vector<Rational>;

/// Basis of the right null space of an r x c rational matrix (rows given).
inline std::vector<Column> nullspace(std::vector<std::vector<Rational>> rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows.size(); ++c) {
    std::size_t p = pr;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[pr]);
    Rational inv = 1 / rows[pr][c];
    for (auto& x : rows[pr]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pr || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[pr][j];
    }
    pivots.push_back(c);
    ++pr;
  }
  std::vector<Column> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    Column v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
    out.push_back(std::move(v));
  }
  return out;
}

/// Scales to a primitive integer vector whose first nonzero entry is positive.
inline Column primitive(const Column& v) {
  Integer den = 1, g = 0;
  for (const auto& x : v) den = lcm(den, x.get_den());
  for (const auto& x : v) g = gcd(g, x.get_num() * (den / x.get_den()));
  Column out(v.size());
  if (g == 0) return out;
  Rational f = Rational(den) / Rational(g);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * f;
  for (const auto& x : out)
    if (x != 0) {
      if (x < 0)
        for (auto& y : out) y = -y;
      break;
    }
  return out;
}

inline Mat from_columns(const std::vector<Column>& cols) {
  Mat t(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols.size(); ++i) t(i, j) = cols[j][i];
  return t;
}

/// A = T * diag(eigenvalues) * T^-1; eigenvalues ascending, columns of T
/// primitive integer vectors with positive leading entry.
struct EigenSystem {
  Mat t;
  std::vector<Rational> eigenvalues;
};

inline std::optional<EigenSystem> rational_eigensystem(const Mat& a) {
  const std::size_t n = a.dim();
  auto roots = rational_roots(char_poly(a));
  long total = 0;
  for (const auto& r : roots) total += r.second;
  if (total != static_cast<long>(n)) return std::nullopt;
  EigenSystem es;
  std::vector<Column> cols;
  for (const auto& [lambda, mult] : roots) {
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j) - (i == j ? lambda : 0);
    auto basis = nullspace(std::move(rows), n);
    if (static_cast<long>(basis.size()) != mult) return std::nullopt;
    for (auto& v : basis) {
      cols.push_back(primitive(v));
      es.eigenvalues.push_back(lambda);
    }
  }
  es.t = from_columns(cols);
  return es;
}

/// Why simultaneous_diagonalize returned nothing.
enum class SimDiagFailure { none, non_commuting, not_diagonalizable, irrational_spectrum };

struct SimultaneousDiagonalization {
  Mat t;  ///< T^-1 * A_j * T is diagonal for every j
  /// eigenvalues[i][j]: i-th diagonal entry of T^-1 A_j T (n x s)
  std::vector<std::vector<Rational>> eigenvalues;
};

struct SimDiagOutcome {
  std::optional<SimultaneousDiagonalization> value;
  SimDiagFailure failure = SimDiagFailure::none;
};

/// Common-eigenspace refinement: matrices in input order, eigenvalues of each
/// in ascending order.
inline SimDiagOutcome simultaneous_diagonalize(const std::vector<Mat>& as) {
  if (as.empty()) throw invalid_input("simultaneous_diagonalize: empty family");
  const std::size_t n = as.front().dim();
  for (const auto& a : as) require_same_dim(as.front(), a, "simultaneous_diagonalize");
  for (std::size_t i = 0; i < as.size(); ++i)
    for (std::size_t j = i + 1; j < as.size(); ++j)
      if (!commute(as[i], as[j])) return {std::nullopt, SimDiagFailure::non_commuting};

  std::vector<std::vector<Column>> spaces;
  {
    std::vector<Column> all;
    for (std::size_t i = 0; i < n; ++i) {
      Column e(n);
      e[i] = 1;
      all.push_back(std::move(e));
    }
    spaces.push_back(std::move(all));
  }
  for (const auto& a : as) {
    if (!is_diagonalizable(a)) return {std::nullopt, SimDiagFailure::not_diagonalizable};
    auto es = rational_eigensystem(a);
    if (!es) return {std::nullopt, SimDiagFailure::irrational_spectrum};
    std::vector<Rational> distinct = es->eigenvalues;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::vector<Column>> refined;
    for (const auto& v : spaces) {
      const std::size_t d = v.size();
      for (const auto& lambda : distinct) {
        // (A - lambda) V as an n x d matrix; its null space picks W inside V.
        std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(d));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t c = 0; c < d; ++c) {
            Rational s = 0;
            for (std::size_t k = 0; k < n; ++k)
              s += (a(i, k) - (i == k ? lambda : 0)) * v[c][k];
            rows[i][c] = s;
          }
        auto coeffs = nullspace(std::move(rows), d);
        if (coeffs.empty()) continue;
        std::vector<Column> w;
        for (const auto& cf : coeffs) {
          Column x(n);
          for (std::size_t c = 0; c < d; ++c)
            for (std::size_t k = 0; k < n; ++k) x[k] += cf[c] * v[c][k];
          w.push_back(std::move(x));
        }
        refined.push_back(std::move(w));
      }
    }
    spaces = std::move(refined);
  }
  std::vector<Column> cols;
  for (const auto& v : spaces)
    for (const auto& x : v) cols.push_back(primitive(x));

  SimultaneousDiagonalization out;
  out.t = from_columns(cols);
  out.eigenvalues.assign(n, std::vector<Rational>(as.size()));
  for (std::size_t j = 0; j < as.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const Column& t = cols[i];
      std::size_t p = 0;
      while (t[p] == 0) ++p;
      Rational img = 0;
      for (std::size_t k = 0; k < n; ++k) img += as[j](p, k) * t[k];
      out.eigenvalues[i][j] = img / t[p];
    }
  }
  return {std::move(out), SimDiagFailure::none};
}

/// Smallest k >= 1 with A^k = I, if any. Requires diagonalizability and a
/// characteristic polynomial that is a product of Phi_m with phi(m) <= n.
inline std::optional<long> torsion_order(const Mat& a) {
  if (!is_diagonalizable(a)) return std::nullopt;
  Poly rest = char_poly(a);
  long k = 1;
  for (long m : cyclotomic_orders_up_to_degree(static_cast<long>(a.dim()))) {
    const Poly phi = cyclotomic(m);
    for (;;) {
      auto [q, r] = divmod(rest, phi);
      if (!r.is_zero() || q.is_zero()) break;
      rest = std::move(q);
      k = std::lcm(k, m);
    }
    if (rest.degree() == 0) break;
  }
  if (rest.degree() != 0) return std::nullopt;
  if (!mat_pow(a, k).is_identity()) return std::nullopt;
  for (long p = 2; p <= k; ++p) {
    while (k % p == 0 && mat_pow(a, k / p).is_identity()) k /= p;
  }
  return k;
}

}  // namespace matknap
