#pragma once

#include "matknap/arith.hpp"

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace matknap {

/// Dense square matrix over the rationals, row-major.
class Mat {
 public:
  Mat() = default;
  explicit Mat(std::size_t n) : n_(n), a_(n * n) {
    if (n == 0) throw invalid_input("matrix dimension must be positive");
  }
  Mat(std::initializer_list<std::initializer_list<Rational>> rows)
      : Mat(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != n_) throw invalid_input("matrix literal is not square");
      std::size_t j = 0;
      for (const auto& x : row) (*this)(i, j++) = x;
      ++i;
    }
  }

  static Mat from_rows(const std::vector<std::vector<Rational>>& rows) {
    Mat m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size())
        throw invalid_input("matrix literal is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Mat identity(std::size_t n) {
    Mat m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Mat diag(const std::vector<Rational>& values) {
    Mat m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t dim() const { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }
  const std::vector<Rational>& entries() const { return a_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }
  bool is_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (i != j && (*this)(i, j) != 0) return false;
    return true;
  }
  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.n_ == y.n_ && x.a_ == y.a_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Rational> a_;
};

inline void require_same_dim(const Mat& a, const Mat& b, const char* what) {
  if (a.dim() != b.dim())
    throw invalid_input(std::string(what) + ": dimension mismatch (" +
                        std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  require_same_dim(a, b, "mat_mul");
  const std::size_t n = a.dim();
  Mat c(n);
  Rational t;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b(k, j) == 0) continue;
        mpq_mul(t.get_mpq_t(), aik.get_mpq_t(), b(k, j).get_mpq_t());
        c(i, j) += t;
      }
    }
  return c;
}

inline Mat operator*(const Mat& a, const Mat& b) { return mat_mul(a, b); }

inline Mat operator-(const Mat& a, const Mat& b) {
  require_same_dim(a, b, "mat_sub");
  Mat c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

inline Mat scaled(const Mat& a, const Rational& s) {
  Mat c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) * s;
  return c;
}

inline Mat transpose(const Mat& a) {
  Mat t(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) t(j, i) = a(i, j);
  return t;
}

/// Integer matrix M and positive integer d with a = M / d (d = lcm of entry
/// denominators).
struct ClearedMat {
  std::vector<std::vector<Integer>> m;
  Integer den;
};

inline ClearedMat clear_denominators(const Mat& a) {
  ClearedMat out;
  out.den = 1;
  for (const auto& x : a.entries()) out.den = lcm(out.den, x.get_den());
  const std::size_t n = a.dim();
  out.m.assign(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.m[i][j] = a(i, j).get_num() * (out.den / a(i, j).get_den());
  return out;
}

namespace detail {

// Bareiss fraction-free elimination on an integer matrix with extra columns
// carried along. Returns the determinant of the leading n x n block (with
// row-swap sign applied); rows are left in echelon form.
inline Integer bareiss(std::vector<std::vector<Integer>>& m, std::size_t n) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign < 0 ? Integer(-m[n - 1][n - 1]) : m[n - 1][n - 1];
}

}  // namespace detail

inline Rational determinant(const Mat& a) {
  auto c = clear_denominators(a);
  Integer d = detail::bareiss(c.m, a.dim());
  return Rational(d) / pow(Rational(c.den), static_cast<long>(a.dim()));
}

inline Mat mat_inverse(const Mat& a) {
  const std::size_t n = a.dim();
  auto c = clear_denominators(a);
  std::vector<std::vector<Integer>> aug(n, std::vector<Integer>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = c.m[i][j];
    aug[i][n + i] = 1;
  }
  if (detail::bareiss(aug, n) == 0) throw precondition_error("matrix is singular");
  // Back substitution on the fraction-free upper triangle: U x = rhs.
  Mat inv(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<Rational> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
      Rational s(aug[ii][n + col]);
      for (std::size_t j = ii + 1; j < n; ++j) s -= Rational(aug[ii][j]) * x[j];
      x[ii] = s / Rational(aug[ii][ii]);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i] * c.den;
  }
  return inv;
}

inline Mat mat_pow(const Mat& a, long k) {
  if (k < 0) return mat_pow(mat_inverse(a), -k);
  Mat result = Mat::identity(a.dim());
  Mat base = a;
  auto e = static_cast<unsigned long>(k);
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

/// Projective height: clear denominators, divide by the gcd of the resulting
/// integers, take the largest absolute value.
inline Integer height(const Mat& a) {
  if (a.is_zero()) throw invalid_input("height of the zero matrix is undefined");
  auto c = clear_denominators(a);
  Integer g = 0, top = 0;
  for (const auto& row : c.m)
    for (const auto& x : row) {
      g = gcd(g, x);
      if (abs_int(x) > top) top = abs_int(x);
    }
  return top / g;
}

inline bool commute(const Mat& a, const Mat& b) { return a * b == b * a; }

/// Hash over the exact canonical entries.
struct MatHash {
  std::size_t operator()(const Mat& m) const noexcept {
    std::size_t h = m.dim();
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (const auto& q : m.entries()) {
      for (const mpz_srcptr z : {q.get_num_mpz_t(), q.get_den_mpz_t()}) {
        mix(static_cast<std::size_t>(z->_mp_size));
        const std::size_t limbs = mpz_size(z);
        for (std::size_t i = 0; i < limbs; ++i)
          mix(static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))));
      }
    }
    return h;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Mat& m) {
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) os << ',';
      os << m(i, j).get_str();
    }
    os << ']';
  }
  return os << ']';
}

}  // namespace matknap
