#pragma once

// Exponent equations for matrices over Q: perfect-power equality
// A1^k1 = A2^k2, the commuting identity problem prod A_i^k_i = I, and a
// bounded meet-in-the-middle checker for A^k1 B^k2 = T C^-k3.

#include "matknap/matrix.hpp"
#include "matknap/multrel.hpp"
#include "matknap/spectra.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace matknap {

enum class SolveStatus { exact, bounded_search, inapplicable };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::exact: return "exact";
    case SolveStatus::bounded_search: return "bounded-search";
    case SolveStatus::inapplicable: return "inapplicable";
  }
  return "?";
}

/// max(16, ceil(8 log2(H + 2))), computed exactly as the bit length of (H+2)^8 - 1.
inline long default_kmax(const Integer& h) {
  Integer x = pow(Integer(h + 2), 8) - 1;
  long bits = static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
  return std::max(16L, bits);
}

inline long default_kmax(const std::vector<Mat>& as) {
  Integer h = 1;
  for (const auto& a : as)
    if (!a.is_zero()) h = std::max(h, height(a));
  return default_kmax(h);
}

/// prod_i mat_pow(As[i], k[i]).
inline Mat power_product(const std::vector<Mat>& as, const IntVec& k) {
  if (as.size() != k.size()) throw invalid_input("power_product: exponent count mismatch");
  Mat p = Mat::identity(as.front().dim());
  for (std::size_t i = 0; i < as.size(); ++i) p = p * mat_pow(as[i], to_long(k[i]));
  return p;
}

namespace detail {

inline void require_invertible(const std::vector<Mat>& as, const char* what) {
  if (as.empty()) throw invalid_input(std::string(what) + ": no matrices");
  for (const auto& a : as) {
    require_same_dim(as.front(), a, what);
    if (determinant(a) == 0) throw invalid_input(std::string(what) + ": singular matrix");
  }
}

inline std::vector<Mat> power_range(const Mat& a, long kmax) {
  // index k + kmax holds A^k
  std::vector<Mat> out(static_cast<std::size_t>(2 * kmax + 1));
  out[static_cast<std::size_t>(kmax)] = Mat::identity(a.dim());
  Mat inv = mat_inverse(a);
  for (long k = 1; k <= kmax; ++k) {
    out[static_cast<std::size_t>(kmax + k)] = out[static_cast<std::size_t>(kmax + k - 1)] * a;
    out[static_cast<std::size_t>(kmax - k)] = out[static_cast<std::size_t>(kmax - k + 1)] * inv;
  }
  return out;
}

inline void next_in_box(std::vector<long>& k, long kmax) {
  for (std::size_t i = k.size(); i-- > 0;) {
    if (k[i] < kmax) {
      ++k[i];
      return;
    }
    k[i] = -kmax;
  }
}

inline long box_size(std::size_t dim, long kmax) {
  long n = 1;
  for (std::size_t i = 0; i < dim; ++i) n *= 2 * kmax + 1;
  return n;
}

/// Every k in [-kmax, kmax]^s with prod A_i^k_i = I, via a table of the left
/// half products probed with inverses of the right half.
inline std::vector<IntVec> identity_hits_in_box(const std::vector<Mat>& as, long kmax) {
  const std::size_t s = as.size(), left = (s + 1) / 2;
  std::vector<std::vector<Mat>> pw;
  for (const auto& a : as) pw.push_back(power_range(a, kmax));
  const std::size_t n = as.front().dim();

  std::unordered_map<Mat, std::vector<std::vector<long>>, MatHash> table;
  std::vector<long> k(left, -kmax);
  for (long c = 0, total = box_size(left, kmax); c < total; ++c, next_in_box(k, kmax)) {
    Mat p = Mat::identity(n);
    for (std::size_t i = 0; i < left; ++i) p = p * pw[i][static_cast<std::size_t>(k[i] + kmax)];
    table[p].push_back(k);
  }
  std::vector<IntVec> hits;
  std::vector<long> r(s - left, -kmax);
  for (long c = 0, total = box_size(s - left, kmax); c < total; ++c, next_in_box(r, kmax)) {
    // left product must equal the inverse of the right product
    Mat q = Mat::identity(n);
    for (std::size_t i = s; i-- > left;)
      q = q * pw[i][static_cast<std::size_t>(kmax - r[i - left])];
    auto it = table.find(q);
    if (it == table.end()) continue;
    for (const auto& l : it->second) {
      IntVec v;
      for (long x : l) v.emplace_back(x);
      for (long x : r) v.emplace_back(x);
      hits.push_back(std::move(v));
    }
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

inline RelationLattice lattice_of_hits(const std::vector<IntVec>& hits, std::size_t dim) {
  RelationLattice l;
  l.dim = dim;
  l.basis = hnf_basis(hits, dim);
  l.verified = true;
  return l;
}

}  // namespace detail

/// {(k1, k2) : A1^k1 = A2^k2}.
struct PowerEqSolution {
  RelationLattice subgroup;
  std::vector<IntVec> witnesses;
  SolveStatus status = SolveStatus::exact;
  long kmax = 0;  ///< box used when status is bounded-search
};

/// With A1 = T1 D1 T1^-1 and A2 = T2 D2 T2^-1 over Q, the equation becomes
/// D1^k1 M = M D2^k2 for M = T1^-1 T2, i.e. lambda_i^k1 = mu_j^k2 for every
/// (i, j) with M_ij != 0. That is a relation lattice, and it already accounts
/// for signs and repeated eigenvalues.
inline PowerEqSolution power_equality(const Mat& a1, const Mat& a2, std::optional<long> kmax = std::nullopt) {
  detail::require_invertible({a1, a2}, "power_equality");
  PowerEqSolution out;
  auto e1 = rational_eigensystem(a1), e2 = rational_eigensystem(a2);
  if (e1 && e2) {
    Mat m = mat_inverse(e1->t) * e2->t;
    RationalTable rows;
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j)
        if (m(i, j) != 0) rows.push_back({e1->eigenvalues[i], 1 / e2->eigenvalues[j]});
    out.subgroup = relation_lattice(rows);
    out.status = SolveStatus::exact;
  } else {
    out.kmax = kmax.value_or(default_kmax({a1, a2}));
    auto hits = detail::identity_hits_in_box({a1, mat_inverse(a2)}, out.kmax);
    out.subgroup = detail::lattice_of_hits(hits, 2);
    out.status = SolveStatus::bounded_search;
  }
  for (const auto& b : out.subgroup.basis) {
    if (mat_pow(a1, to_long(b[0])) != mat_pow(a2, to_long(b[1])))
      throw std::logic_error("power_equality: basis vector fails exact verification");
    out.witnesses.push_back(b);
  }
  return out;
}

struct KnapsackSolution {
  RelationLattice lattice;
  std::optional<IntVec> nonzero_witness;
  SolveStatus status = SolveStatus::exact;
  long kmax = 0;
};

/// Solutions of prod A_i^k_i = I for a commuting family. Exact when the family
/// diagonalizes over Q, bounded-search when it commutes but does not,
/// inapplicable when it does not commute.
inline KnapsackSolution commuting_knapsack(const std::vector<Mat>& as, std::optional<long> kmax = std::nullopt) {
  detail::require_invertible(as, "commuting_knapsack");
  KnapsackSolution out;
  auto sd = simultaneous_diagonalize(as);
  if (sd.failure == SimDiagFailure::non_commuting) {
    out.status = SolveStatus::inapplicable;
    out.lattice.dim = as.size();
    return out;
  }
  if (sd.value) {
    out.lattice = relation_lattice(sd.value->eigenvalues);
    out.status = SolveStatus::exact;
  } else {
    out.kmax = kmax.value_or(default_kmax(as));
    out.lattice = detail::lattice_of_hits(detail::identity_hits_in_box(as, out.kmax), as.size());
    out.status = SolveStatus::bounded_search;
  }
  for (const auto& b : out.lattice.basis)
    if (!power_product(as, b).is_identity())
      throw std::logic_error("commuting_knapsack: basis vector fails exact verification");
  out.nonzero_witness = nonvanishing_vector(out.lattice);
  if (out.nonzero_witness && !power_product(as, *out.nonzero_witness).is_identity())
    throw std::logic_error("commuting_knapsack: witness fails exact verification");
  return out;
}

/// All (k1, k2, k3) with 0 < |k_i| <= kmax and A^k1 B^k2 = target C^-k3.
inline std::vector<IntVec> abc_bounded_search(const Mat& a, const Mat& b, const Mat& c, const Mat& target, long kmax) {
  detail::require_invertible({a, b, c}, "abc_bounded_search");
  require_same_dim(a, target, "abc_bounded_search");
  if (kmax < 1) throw invalid_input("abc_bounded_search: kmax must be positive");
  auto pa = detail::power_range(a, kmax), pb = detail::power_range(b, kmax), pc = detail::power_range(c, kmax);
  auto at = [kmax](const std::vector<Mat>& p, long k) -> const Mat& { return p[static_cast<std::size_t>(k + kmax)]; };

  std::unordered_map<Mat, std::vector<std::pair<long, long>>, MatHash> left;
  for (long k1 = -kmax; k1 <= kmax; ++k1) {
    if (k1 == 0) continue;
    for (long k2 = -kmax; k2 <= kmax; ++k2)
      if (k2 != 0) left[at(pa, k1) * at(pb, k2)].emplace_back(k1, k2);
  }
  std::vector<IntVec> out;
  for (long k3 = -kmax; k3 <= kmax; ++k3) {
    if (k3 == 0) continue;
    auto it = left.find(target * at(pc, -k3));
    if (it == left.end()) continue;
    for (auto [k1, k2] : it->second) {
      if (mat_pow(a, k1) * mat_pow(b, k2) * mat_pow(c, k3) != target)
        throw std::logic_error("abc_bounded_search: hit fails exact verification");
      out.push_back({k1, k2, k3});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace matknap
