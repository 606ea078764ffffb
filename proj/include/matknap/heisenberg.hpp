#pragma once

// Heisenberg group: upper unitriangular 3x3 matrices
//   [[1, a, c], [0, 1, b], [0, 0, 1]]
// stored as (a, b, c). Exponent equations A1^k1 ... As^ks = I are reduced to
// two linear forms in k plus one quadratic, all generated from the closed-form
// power and product below rather than written out by hand.

#include "matknap/lattice.hpp"
#include "matknap/matrix.hpp"
#include "matknap/mpoly.hpp"
#include "matknap/multrel.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace matknap {

template <class T>
struct HeisMat {
  T a{}, b{}, c{};
  friend bool operator==(const HeisMat& x, const HeisMat& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
};

using Heis = HeisMat<Rational>;

template <class T>
HeisMat<T> heis_identity() {
  return {T(0), T(0), T(0)};
}

template <class T>
HeisMat<T> heis_mul(const HeisMat<T>& x, const HeisMat<T>& y) {
  return {T(x.a + y.a), T(x.b + y.b), T(x.c + y.c + x.a * y.b)};
}

template <class T>
HeisMat<T> heis_inverse(const HeisMat<T>& x) {
  return {T(-x.a), T(-x.b), T(-x.c + x.a * x.b)};
}

/// (k a, k b, k c + k(k-1)/2 a b); K may be an integer or a symbol.
template <class T, class K>
HeisMat<T> heis_pow(const HeisMat<T>& m, const K& k) {
  const T kk(k);
  const T tri = T(kk * (kk - T(1))) * T(make_rational(1, 2));
  return {T(kk * m.a), T(kk * m.b), T(kk * m.c + tri * m.a * m.b)};
}

/// prod_i heis_pow(as[i], ks[i]) in order.
template <class T>
HeisMat<T> heis_word(const std::vector<HeisMat<T>>& as, const std::vector<T>& ks) {
  if (as.size() != ks.size()) throw invalid_input("heis_word: exponent count mismatch");
  HeisMat<T> p = heis_identity<T>();
  for (std::size_t i = 0; i < as.size(); ++i) p = heis_mul(p, heis_pow(as[i], ks[i]));
  return p;
}

inline bool heis_word_is_identity(const std::vector<Heis>& as, const IntVec& k) {
  std::vector<Rational> ks(k.begin(), k.end());
  return heis_word(as, ks) == heis_identity<Rational>();
}

inline Mat to_mat(const Heis& h) { return Mat{{1, h.a, h.c}, {0, 1, h.b}, {0, 0, 1}}; }

inline Heis from_mat(const Mat& m) {
  if (m.dim() != 3 || m(0, 0) != 1 || m(1, 1) != 1 || m(2, 2) != 1 || m(1, 0) != 0 || m(2, 0) != 0 ||
      m(2, 1) != 0)
    throw invalid_input("not an upper unitriangular 3x3 matrix");
  return {m(0, 1), m(1, 2), m(0, 2)};
}

/// Symbols for the generic word of s factors: a_i, b_i, c_i, k_i.
struct HeisSymbols {
  std::size_t s;
  MPoly a(std::size_t i) const { return MPoly::var(4 * i); }
  MPoly b(std::size_t i) const { return MPoly::var(4 * i + 1); }
  MPoly c(std::size_t i) const { return MPoly::var(4 * i + 2); }
  MPoly k(std::size_t i) const { return MPoly::var(4 * i + 3); }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= s; ++i)
      for (const char* p : {"a", "b", "c", "k"}) out.push_back(p + std::to_string(i));
    return out;
  }
};

/// Entries of A1^k1 ... As^ks - I as polynomials in all the symbols.
inline HeisMat<MPoly> symbolic_system(const HeisSymbols& sym) {
  std::vector<HeisMat<MPoly>> as;
  std::vector<MPoly> ks;
  for (std::size_t i = 0; i < sym.s; ++i) {
    as.push_back({sym.a(i), sym.b(i), sym.c(i)});
    ks.push_back(sym.k(i));
  }
  return heis_word(as, ks);
}

/// Same word with numeric matrices; the only variables left are k_i = x_i.
inline HeisMat<MPoly> numeric_system(const std::vector<Heis>& as) {
  std::vector<HeisMat<MPoly>> ps;
  std::vector<MPoly> ks;
  for (std::size_t i = 0; i < as.size(); ++i) {
    ps.push_back({MPoly(as[i].a), MPoly(as[i].b), MPoly(as[i].c)});
    ks.push_back(MPoly::var(i));
  }
  return heis_word(ps, ks);
}

enum class HeisKind { lattice_with_nonzero_filter, finite, empty };

inline std::string to_string(HeisKind k) {
  switch (k) {
    case HeisKind::lattice_with_nonzero_filter: return "lattice-with-nonzero-filter";
    case HeisKind::finite: return "finite";
    case HeisKind::empty: return "empty";
  }
  return "?";
}

/// Exponent vectors with every coordinate nonzero solving the word equation.
struct HeisSolutionSet {
  HeisKind kind = HeisKind::empty;
  std::optional<KernelBasis> lattice;     ///< solutions are its members with no zero coordinate
  std::vector<IntVec> finite_solutions;  ///< sorted
  std::optional<IntVec> witness;         ///< one verified all-nonzero solution
  std::string branch;                    ///< "linear" or "line"
  std::optional<Integer> tau;            ///< stride of k1 along the solution line

  bool contains(const IntVec& k) const {
    for (const auto& x : k)
      if (x == 0) return false;
    switch (kind) {
      case HeisKind::empty: return false;
      case HeisKind::finite:
        return std::find(finite_solutions.begin(), finite_solutions.end(), k) != finite_solutions.end();
      case HeisKind::lattice_with_nonzero_filter: return lattice_member(*lattice, k);
    }
    return false;
  }
};

namespace detail {

inline IntVec cleared_row(const std::vector<Rational>& row) {
  Integer den = 1;
  for (const auto& x : row) den = lcm(den, Integer(x.get_den()));
  IntVec out;
  for (const auto& x : row) out.emplace_back(Rational(x * den).get_num());
  return out;
}

inline std::vector<Rational> linear_coeffs(const MPoly& p, std::size_t s) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < s; ++i) {
    MPoly::Monomial m(i + 1);
    m[i] = 1;
    out.push_back(p.coeff(m));
  }
  return out;
}

inline std::vector<Rational> as_rationals(const IntVec& v) { return {v.begin(), v.end()}; }

inline HeisSolutionSet solve_word(const std::vector<Heis>& as) {
  const std::size_t s = as.size();
  const HeisMat<MPoly> sys = numeric_system(as);
  const auto la = linear_coeffs(sys.a, s), lb = linear_coeffs(sys.b, s);
  const MPoly quad = sys.c.homogeneous(2);
  if (sys.c.degree() > 2 || !sys.c.homogeneous(0).is_zero())
    throw std::logic_error("solve_word: unexpected shape of the (1,3) equation");

  auto ab = integer_kernel(IntMat::from_rows({cleared_row(la), cleared_row(lb)}, s));
  HeisSolutionSet out;

  if (ab.rank() == 1) {
    // Solutions lie on the line u * g; the (1,3) entry becomes alpha u^2 + beta u.
    out.branch = "line";
    const IntVec& g = ab.basis[0];
    if (g[0] != 0) out.tau = abs_int(g[0]);
    auto at = [&](long u) {
      std::vector<Rational> k;
      for (const auto& x : g) k.push_back(Rational(x * u));
      return sys.c.eval(k);
    };
    const Rational alpha = (at(1) + at(-1)) / 2, beta = (at(1) - at(-1)) / 2;
    const bool g_nonzero = std::none_of(g.begin(), g.end(), [](const Integer& x) { return x == 0; });
    if (!g_nonzero) return out;
    if (alpha != 0) {
      Rational u = -beta / alpha;
      if (u == 0 || u.get_den() != 1) return out;
      IntVec k;
      for (const auto& x : g) k.push_back(x * u.get_num());
      if (!heis_word_is_identity(as, k)) throw std::logic_error("solve_word: root fails exact verification");
      out.kind = HeisKind::finite;
      out.finite_solutions.push_back(k);
      out.witness = k;
    } else if (beta == 0) {
      out.kind = HeisKind::lattice_with_nonzero_filter;
      out.lattice = ab;
      out.witness = g;
    }
    if (out.witness && !heis_word_is_identity(as, *out.witness))
      throw std::logic_error("solve_word: witness fails exact verification");
    return out;
  }

  // The linear forms are proportional, so the quadratic part must vanish on
  // their kernel; check it on basis vectors and pairwise sums.
  out.branch = "linear";
  for (std::size_t i = 0; i < ab.rank(); ++i)
    for (std::size_t j = i; j < ab.rank(); ++j) {
      IntVec v = ab.basis[i];
      if (j != i)
        for (std::size_t t = 0; t < s; ++t) v[t] += ab.basis[j][t];
      if (quad.eval(as_rationals(v)) != 0)
        throw precondition_error("solve_word: quadratic part does not vanish on the linear solutions");
    }
  const auto lc = linear_coeffs(sys.c, s);
  auto full = integer_kernel(IntMat::from_rows({cleared_row(la), cleared_row(lb), cleared_row(lc)}, s));
  for (const auto& v : full.basis)
    if (!heis_word_is_identity(as, v)) throw std::logic_error("solve_word: basis vector fails exact verification");
  auto w = nonvanishing_vector(RelationLattice{s, full.basis, true});
  if (!w) return out;
  if (!heis_word_is_identity(as, *w)) throw std::logic_error("solve_word: witness fails exact verification");
  out.kind = HeisKind::lattice_with_nonzero_filter;
  out.lattice = std::move(full);
  out.witness = std::move(w);
  return out;
}

}  // namespace detail

/// All (k1, k2, k3), every k_i != 0, with A1^k1 A2^k2 A3^k3 = I.
inline HeisSolutionSet solve_triple(const Heis& a1, const Heis& a2, const Heis& a3) {
  return detail::solve_word({a1, a2, a3});
}

/// All (k1, k2), both nonzero, with A1^k1 A2^k2 = I.
inline HeisSolutionSet solve_pair(const Heis& a1, const Heis& a2) { return detail::solve_word({a1, a2}); }

}  // namespace matknap
