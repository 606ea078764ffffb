#pragma once

// Integer linear algebra: row Hermite normal form, LLL, integer kernels and
// particular solutions of linear Diophantine systems. Kernel bases and
// particular solutions are checked against the height bound
//   log max|v_i| <= m*h(U) + (m/2)*log m,
// which is tested exactly as max|v_i|^2 <= H^(2m) * m^m.

#include "matknap/arith.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace matknap {

using IntVec = std::vector<Integer>;

/// Rectangular integer matrix, row-major. rows() may be zero only for
/// intermediate results (e.g. an empty kernel basis).
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows, IntVec(cols)) {}
  static IntMat from_rows(std::vector<IntVec> rows, std::size_t cols) {
    IntMat m;
    m.cols_ = cols;
    for (const auto& r : rows)
      if (r.size() != cols) throw invalid_input("ragged integer matrix");
    m.data_ = std::move(rows);
    return m;
  }
  static IntMat from_rows(std::vector<IntVec> rows) {
    if (rows.empty()) throw invalid_input("integer matrix needs at least one row");
    std::size_t cols = rows[0].size();
    return from_rows(std::move(rows), cols);
  }
  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i][j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i][j]; }
  IntVec& row(std::size_t i) { return data_[i]; }
  const IntVec& row(std::size_t i) const { return data_[i]; }
  const std::vector<IntVec>& row_list() const { return data_; }

  IntMat transposed() const {
    IntMat t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = data_[i][j];
    return t;
  }

  friend bool operator==(const IntMat&, const IntMat&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<IntVec> data_;
};

inline IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw invalid_input("IntMat product: shape mismatch");
  IntMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline IntVec mat_vec(const IntMat& u, const IntVec& y) {
  if (u.cols() != y.size()) throw invalid_input("IntMat * vector: shape mismatch");
  IntVec out(u.rows());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) out[i] += u(i, j) * y[j];
  return out;
}

inline bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Integer max_abs(const IntVec& v) {
  Integer m = 0;
  for (const auto& x : v)
    if (abs_int(x) > m) m = abs_int(x);
  return m;
}

inline Integer max_abs(const IntMat& u) {
  Integer m = 0;
  for (const auto& r : u.row_list())
    if (max_abs(r) > m) m = max_abs(r);
  return m;
}

/// Exact test of log max|v| <= m*log(height) + (m/2)*log m, with
/// height := max(1, max|U_ij|).
inline bool within_height_bound(const IntVec& v, std::size_t m, const Integer& matrix_height) {
  Integer h = matrix_height < 1 ? Integer(1) : matrix_height;
  Integer lhs = max_abs(v);
  lhs *= lhs;
  Integer rhs = pow(h, 2 * m) * pow(Integer(static_cast<unsigned long>(m)), m);
  return lhs <= rhs;
}

// ---------------------------------------------------------------------------
// Hermite normal form

struct HnfResult {
  IntMat h;  ///< row HNF: positive pivots, entries above a pivot in [0, pivot)
  IntMat t;  ///< unimodular, h = t * u
  std::size_t rank = 0;
};

inline HnfResult hnf(const IntMat& u) {
  HnfResult r{u, IntMat::identity(u.rows()), 0};
  IntMat& h = r.h;
  IntMat& t = r.t;
  const std::size_t m = u.rows(), n = u.cols();
  auto combine = [&](std::size_t i, std::size_t k, const Integer& a, const Integer& b,
                     const Integer& c, const Integer& d) {
    // (row_i, row_k) <- (a*row_i + b*row_k, c*row_i + d*row_k), ad - bc = 1
    for (IntMat* mat : {&h, &t}) {
      IntVec& ri = mat->row(i);
      IntVec& rk = mat->row(k);
      for (std::size_t j = 0; j < ri.size(); ++j) {
        Integer x = a * ri[j] + b * rk[j];
        Integer y = c * ri[j] + d * rk[j];
        ri[j] = std::move(x);
        rk[j] = std::move(y);
      }
    }
  };
  std::size_t pr = 0;
  for (std::size_t col = 0; col < n && pr < m; ++col) {
    for (std::size_t i = pr + 1; i < m; ++i) {
      if (h(i, col) == 0) continue;
      if (h(pr, col) == 0) {
        std::swap(h.row(pr), h.row(i));
        std::swap(t.row(pr), t.row(i));
        continue;
      }
      auto eg = extended_gcd(h(pr, col), h(i, col));
      Integer x = h(pr, col) / eg.g, y = h(i, col) / eg.g;
      combine(pr, i, eg.s, eg.t, Integer(-y), x);
    }
    if (h(pr, col) == 0) continue;
    if (h(pr, col) < 0)
      for (IntMat* mat : {&h, &t})
        for (auto& x : mat->row(pr)) x = -x;
    for (std::size_t i = 0; i < pr; ++i) {
      Integer q = floor_div(h(i, col), h(pr, col));
      if (q == 0) continue;
      for (IntMat* mat : {&h, &t})
        for (std::size_t j = 0; j < mat->cols(); ++j) (*mat)(i, j) -= q * (*mat)(pr, j);
    }
    ++pr;
  }
  r.rank = pr;
  return r;
}

/// Row HNF of a list of vectors with zero rows dropped.
inline std::vector<IntVec> hnf_basis(const std::vector<IntVec>& vectors, std::size_t dim) {
  if (vectors.empty()) return {};
  auto r = hnf(IntMat::from_rows(vectors, dim));
  return {r.h.row_list().begin(), r.h.row_list().begin() + static_cast<long>(r.rank)};
}

// ---------------------------------------------------------------------------
// LLL (exact rational Gram-Schmidt, delta = 99/100)

namespace detail {

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct GramSchmidt {
  std::vector<std::vector<Rational>> star;
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norm2;
};

inline GramSchmidt gram_schmidt(const std::vector<IntVec>& b) {
  GramSchmidt gs;
  const std::size_t k = b.size();
  gs.star.resize(k);
  gs.mu.assign(k, std::vector<Rational>(k));
  gs.norm2.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> v(b[i].begin(), b[i].end());
    std::vector<Rational> bi = v;
    for (std::size_t j = 0; j < i; ++j) {
      gs.mu[i][j] = gs.norm2[j] == 0 ? Rational(0) : dot(bi, gs.star[j]) / gs.norm2[j];
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= gs.mu[i][j] * gs.star[j][c];
    }
    gs.norm2[i] = dot(v, v);
    gs.star[i] = std::move(v);
  }
  return gs;
}

}  // namespace detail

/// LLL-reduces linearly independent integer vectors in place.
inline void lll_reduce(std::vector<IntVec>& b) {
  const Rational delta(99, 100);
  std::size_t k = 1;
  while (k < b.size()) {
    auto gs = detail::gram_schmidt(b);
    for (std::size_t j = k; j-- > 0;) {
      Integer q = round_rational(gs.mu[k][j]);
      if (q == 0) continue;
      for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[j][c];
      gs = detail::gram_schmidt(b);
    }
    if (gs.norm2[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

// ---------------------------------------------------------------------------
// Kernels and Diophantine systems

/// Basis of the integer kernel of some U (rows are basis vectors).
struct KernelBasis {
  std::size_t dim = 0;
  std::vector<IntVec> basis;
  bool lll_applied = false;  ///< false: basis is the row HNF of the kernel

  std::size_t rank() const { return basis.size(); }
};

inline void require_dims(const IntMat& u) {
  if (u.rows() == 0 || u.cols() == 0)
    throw invalid_input("integer matrix must have at least one row and column");
}

/// Basis of {y in Z^n : U y = 0}. Throws std::logic_error if neither the HNF
/// basis nor its LLL reduction meets the height bound.
inline KernelBasis integer_kernel(const IntMat& u) {
  require_dims(u);
  KernelBasis k;
  k.dim = u.cols();
  auto r = hnf(u.transposed());
  std::vector<IntVec> raw;
  for (std::size_t i = r.rank; i < r.t.rows(); ++i) raw.push_back(r.t.row(i));
  k.basis = hnf_basis(raw, k.dim);

  const Integer h = max_abs(u);
  auto bounded = [&] {
    for (const auto& v : k.basis)
      if (!within_height_bound(v, u.rows(), h)) return false;
    return true;
  };
  if (!bounded()) {
    lll_reduce(k.basis);
    k.lll_applied = true;
    if (!bounded())
      throw std::logic_error("integer_kernel: reduced basis exceeds the height bound");
  }
  return k;
}

/// True iff v is an integer combination of the basis vectors.
inline bool lattice_member(const KernelBasis& k, const IntVec& v) {
  if (v.size() != k.dim) throw invalid_input("lattice_member: dimension mismatch");
  IntVec rest = v;
  for (const auto& row : hnf_basis(k.basis, k.dim)) {
    std::size_t pivot = 0;
    while (row[pivot] == 0) ++pivot;
    for (std::size_t c = 0; c < pivot; ++c)
      if (rest[c] != 0) return false;
    if (!mpz_divisible_p(rest[pivot].get_mpz_t(), row[pivot].get_mpz_t())) return false;
    Integer q = rest[pivot] / row[pivot];
    for (std::size_t c = 0; c < k.dim; ++c) rest[c] -= q * row[c];
  }
  return is_zero(rest);
}

struct DiophantineSolution {
  IntVec particular;
  KernelBasis kernel;
};

/// Solves U y = b over the integers. std::nullopt when there is no integer
/// solution (a normal outcome, not an error).
inline std::optional<DiophantineSolution> solve_dioph(const IntMat& u, const IntVec& b) {
  require_dims(u);
  if (b.size() != u.rows()) throw invalid_input("solve_dioph: rhs length mismatch");
  const std::size_t n = u.cols();
  // (1, y) in ker [-b | U]. In row HNF the first row is the only one with a
  // nonzero first coordinate, and that coordinate generates the image g*Z of
  // the kernel under projection to it; solvable iff g = 1.
  IntMat ext(u.rows(), n + 1);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    ext(i, 0) = -b[i];
    for (std::size_t j = 0; j < n; ++j) ext(i, j + 1) = u(i, j);
  }
  auto r = hnf(ext.transposed());
  std::vector<IntVec> raw;
  for (std::size_t i = r.rank; i < r.t.rows(); ++i) raw.push_back(r.t.row(i));
  auto hb = hnf_basis(raw, n + 1);
  if (hb.empty() || hb[0][0] != 1) return std::nullopt;

  DiophantineSolution sol;
  sol.particular.assign(hb[0].begin() + 1, hb[0].end());
  sol.kernel = integer_kernel(u);

  // Nearest-plane reduction of the particular solution modulo the kernel.
  if (!sol.kernel.basis.empty()) {
    std::vector<IntVec> red = sol.kernel.basis;
    lll_reduce(red);
    auto gs = detail::gram_schmidt(red);
    for (std::size_t j = red.size(); j-- > 0;) {
      std::vector<Rational> y(sol.particular.begin(), sol.particular.end());
      Integer c = round_rational(detail::dot(y, gs.star[j]) / gs.norm2[j]);
      if (c == 0) continue;
      for (std::size_t t = 0; t < n; ++t) sol.particular[t] -= c * red[j][t];
    }
  }
  Integer h = std::max(max_abs(u), max_abs(b));
  if (!within_height_bound(sol.particular, u.rows(), h))
    throw std::logic_error("solve_dioph: particular solution exceeds the height bound");
  return sol;
}

}  // namespace matknap
