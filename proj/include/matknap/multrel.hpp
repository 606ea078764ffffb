#pragma once

// Lattices of multiplicative relations among nonzero rationals.
//
// For an n x s table of nonzero rationals lambda_ij, the relation lattice is
//   { k in Z^s : prod_j lambda_ij^k_j = 1 for every row i }.
// Over Q each lambda is +-prod p^e, so the condition splits into one linear
// equation per (row, prime) on the exponents plus a parity condition per row
// for the signs.

#include "matknap/arith.hpp"
#include "matknap/lattice.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace matknap {

struct RelationLattice {
  std::size_t dim = 0;
  std::vector<IntVec> basis;  ///< row HNF, possibly empty
  bool verified = false;

  std::size_t rank() const { return basis.size(); }
  KernelBasis as_kernel_basis() const { return {dim, basis, false}; }
  bool contains(const IntVec& k) const { return lattice_member(as_kernel_basis(), k); }
};

using RationalTable = std::vector<std::vector<Rational>>;

/// prod_j row[j]^k[j] == 1 for every row, exactly.
inline bool relation_holds(const RationalTable& table, const IntVec& k) {
  for (const auto& row : table) {
    Rational prod = 1;
    for (std::size_t j = 0; j < row.size(); ++j) prod *= pow(row[j], to_long(k[j]));
    if (prod != 1) return false;
  }
  return true;
}

inline RelationLattice relation_lattice(const RationalTable& table) {
  if (table.empty() || table.front().empty())
    throw invalid_input("relation_lattice: empty table");
  const std::size_t n = table.size(), s = table.front().size();
  std::vector<Integer> primes;
  for (const auto& row : table) {
    if (row.size() != s) throw invalid_input("relation_lattice: ragged table");
    for (const auto& x : row) {
      if (x == 0) throw invalid_input("relation_lattice: zero entry");
      auto ps = prime_support(x);
      primes.insert(primes.end(), ps.begin(), ps.end());
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  // Columns: k_1..k_s, then one slack z_i per row with sum_j sigma_ij k_j = 2 z_i.
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<PrimeExpVec> vecs;
    for (const auto& x : table[i]) vecs.push_back(sunit_vector(x, primes));
    for (std::size_t p = 0; p < primes.size(); ++p) {
      IntVec r(s + n);
      for (std::size_t j = 0; j < s; ++j) r[j] = vecs[j].exponents[p];
      if (!is_zero(r)) rows.push_back(std::move(r));
    }
    IntVec parity(s + n);
    for (std::size_t j = 0; j < s; ++j) parity[j] = vecs[j].sign < 0 ? 1 : 0;
    parity[s + i] = -2;
    rows.push_back(std::move(parity));
  }
  auto kernel = integer_kernel(IntMat::from_rows(std::move(rows), s + n));
  // The slack coordinates are determined by k, so projection is injective on
  // the kernel and the projected vectors stay independent.
  std::vector<IntVec> projected;
  for (const auto& v : kernel.basis) projected.emplace_back(v.begin(), v.begin() + static_cast<long>(s));

  RelationLattice out;
  out.dim = s;
  out.basis = hnf_basis(projected, s);
  for (const auto& b : out.basis)
    if (!relation_holds(table, b))
      throw std::logic_error("relation_lattice: basis vector fails exact verification");
  out.verified = true;
  return out;
}

/// A lattice vector with every coordinate nonzero, if one exists: combine the
/// basis with distinct powers of a large N so no coordinate can cancel.
inline std::optional<IntVec> nonvanishing_vector(const RelationLattice& l) {
  if (!l.verified) throw precondition_error("nonvanishing_vector: lattice is not verified");
  if (l.basis.empty()) return std::nullopt;
  for (std::size_t i = 0; i < l.dim; ++i) {
    bool any = false;
    for (const auto& b : l.basis) any = any || b[i] != 0;
    if (!any) return std::nullopt;
  }
  Integer top = 0;
  for (const auto& b : l.basis) top = std::max(top, max_abs(b));
  Integer big = 1 + top * static_cast<unsigned long>(l.basis.size());
  for (;; ++big) {
    IntVec v(l.dim);
    Integer weight = 1;
    for (const auto& b : l.basis) {
      for (std::size_t i = 0; i < l.dim; ++i) v[i] += weight * b[i];
      weight *= big;
    }
    if (std::none_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; })) return v;
  }
}

}  // namespace matknap
