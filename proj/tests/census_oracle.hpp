#pragma once

// Brute-force census counts: every symmetric matrix in the box, powers by
// repeated multiplication, dependence by matching power tables.

#include "matknap/matrix.hpp"
#include "oracles.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace matknap::oracle {

using Key = std::vector<Rational>;

inline Key key(const Mat& m) { return m.entries(); }

/// Symmetric [[a,b],[b,c]] with |entries| <= h and nonzero determinant.
inline std::vector<Mat> symmetric_box(long h) {
  std::vector<Mat> out;
  for (long a = -h; a <= h; ++a)
    for (long b = -h; b <= h; ++b)
      for (long c = -h; c <= h; ++c)
        if (a * c != b * b) out.push_back(Mat{{a, b}, {b, c}});
  return out;
}

/// Integer 2x2 matrices of finite order have order at most 6.
inline bool finite_order(const Mat& m) {
  Mat p = m;
  for (int k = 1; k <= 12; ++k) {
    if (p.is_identity()) return true;
    p = naive_mul(p, m);
  }
  return false;
}

struct PairOracle {
  long total = 0, torsion = 0, dependent = 0;
};

/// Ordered pairs (A, B), A = B allowed, of non-torsion matrices with
/// A^k = B^l for some nonzero k, l in [-bound, bound].
inline PairOracle pair_census(long h, long bound) {
  PairOracle out;
  std::vector<Mat> free;
  for (const auto& m : symmetric_box(h)) {
    ++out.total;
    if (finite_order(m)) {
      ++out.torsion;
    } else {
      free.push_back(m);
    }
  }
  std::map<Key, std::vector<int>> owners;
  for (int i = 0; i < static_cast<int>(free.size()); ++i) {
    auto t = power_table(free[static_cast<std::size_t>(i)], bound);
    for (long k = -bound; k <= bound; ++k)
      if (k != 0) owners[key(t[static_cast<std::size_t>(k + bound)])].push_back(i);
  }
  std::set<std::pair<int, int>> dep;
  for (const auto& [k, v] : owners)
    for (int i : v)
      for (int j : v) dep.insert({i, j});
  out.dependent = static_cast<long>(dep.size());
  return out;
}

/// Ordered triples of distinct non-torsion matrices, no two of them dependent
/// within pair_bound, with A^k B^l C^m = I for nonzero k, l, m in
/// [-bound, bound].
inline long tuple_census(long h, long bound, long pair_bound) {
  std::vector<Mat> free;
  for (const auto& m : symmetric_box(h))
    if (!finite_order(m)) free.push_back(m);
  const std::size_t n = free.size();
  std::vector<std::vector<Mat>> pw;
  for (const auto& m : free) pw.push_back(power_table(m, std::max(bound, pair_bound)));
  const long wide = std::max(bound, pair_bound);
  auto power = [&](std::size_t i, long k) -> const Mat& { return pw[i][static_cast<std::size_t>(k + wide)]; };

  std::vector<std::vector<char>> dep(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    std::set<Key> mine;
    for (long k = -pair_bound; k <= pair_bound; ++k)
      if (k != 0) mine.insert(key(power(i, k)));
    for (std::size_t j = 0; j < n; ++j)
      for (long l = -pair_bound; l <= pair_bound && !dep[i][j]; ++l)
        if (l != 0 && mine.count(key(power(j, l)))) dep[i][j] = 1;
  }

  long count = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dep[i][j]) continue;
      std::set<Key> prods;
      for (long k = -bound; k <= bound; ++k)
        for (long l = -bound; l <= bound; ++l)
          if (k != 0 && l != 0) prods.insert(key(naive_mul(power(i, k), power(j, l))));
      for (std::size_t m = j + 1; m < n; ++m) {
        if (dep[i][m] || dep[j][m]) continue;
        bool hit = false;
        for (long t = -bound; t <= bound && !hit; ++t)
          hit = t != 0 && prods.count(key(power(m, t)));
        if (hit) count += 6;  // every ordering: rotate and invert the relation
      }
    }
  return count;
}

}  // namespace matknap::oracle
