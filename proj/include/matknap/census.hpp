#pragma once

// Counting experiments on symmetric 2x2 integer matrices of bounded height:
// multiplicatively dependent pairs, fixed-determinant counts, divisor and
// smooth-number counts, and dependent tuples.

#include "matknap/knapsack.hpp"
#include "matknap/matrix.hpp"
#include "matknap/multrel.hpp"
#include "matknap/spectra.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace matknap {

/// [[a, b], [b, c]]
struct Sym2 {
  long a = 0, b = 0, c = 0;
  long det() const { return a * c - b * b; }
  Mat mat() const { return Mat{{a, b}, {b, c}}; }
  friend bool operator==(const Sym2&, const Sym2&) = default;
};

/// Every nonsingular [[a, b], [b, c]] with |a|, |b|, |c| <= H, lexicographic in (a, b, c).
inline std::vector<Sym2> enumerate_symmetric_entries(long h) {
  if (h < 1) throw invalid_input("enumerate_symmetric: H must be positive");
  std::vector<Sym2> out;
  for (long a = -h; a <= h; ++a)
    for (long b = -h; b <= h; ++b)
      for (long c = -h; c <= h; ++c)
        if (a * c - b * b != 0) out.push_back({a, b, c});
  return out;
}

inline std::vector<Mat> enumerate_symmetric(long h) {
  std::vector<Mat> out;
  for (const auto& s : enumerate_symmetric_entries(h)) out.push_back(s.mat());
  return out;
}

// ---------------------------------------------------------------------------
// Pairs

enum class PairKind { witness, independent, undecided };

inline std::string to_string(PairKind k) {
  switch (k) {
    case PairKind::witness: return "witness";
    case PairKind::independent: return "independent";
    case PairKind::undecided: return "undecided";
  }
  return "?";
}

struct PairVerdict {
  PairKind kind = PairKind::undecided;
  std::optional<std::pair<long, long>> witness;  ///< A^k B^l = I, (k, l) != 0
  std::string route;
};

namespace detail {

inline bool is_integer_sym2(const Mat& m) {
  if (m.dim() != 2 || m(0, 1) != m(1, 0)) return false;
  for (const auto& x : m.entries())
    if (x.get_den() != 1) return false;
  return true;
}

inline PairVerdict found(long k, long l, const char* route) { return {PairKind::witness, std::make_pair(k, l), route}; }

inline bool verifies(const Mat& a, const Mat& b, long k, long l) { return (mat_pow(a, k) * mat_pow(b, l)).is_identity(); }

/// log|eigenvalue| of a on its larger eigenvector, and of b on the same vector.
/// Only used to propose candidates.
inline std::pair<double, double> shared_log_eigenvalues(const Mat& a, const Mat& b) {
  const double p = a(0, 0).get_d(), q = a(0, 1).get_d(), r = a(1, 1).get_d();
  const double lam = (p + r + std::sqrt((p - r) * (p - r) + 4 * q * q)) / 2;
  double v0 = q, v1 = lam - p;
  if (q == 0) v0 = 1, v1 = 0;
  const double mu = v0 != 0 ? (b(0, 0).get_d() * v0 + b(0, 1).get_d() * v1) / v0
                            : (b(1, 0).get_d() * v0 + b(1, 1).get_d() * v1) / v1;
  return {std::log(std::abs(lam)), std::log(std::abs(mu))};
}

/// Continued-fraction candidates (k, l) for k x + l y = 0, each checked exactly
/// against A^k B^l = +-I.
inline std::optional<std::pair<long, long>> unit_relation(const Mat& a, const Mat& b, long max_den) {
  auto [x, y] = shared_log_eigenvalues(a, b);
  if (x == 0 || !std::isfinite(x) || !std::isfinite(y)) return std::nullopt;
  double t = -y / x;  // k / l
  long p0 = 1, q0 = 0, p1 = static_cast<long>(std::floor(t)), q1 = 1;
  double frac = t - std::floor(t);
  for (int it = 0; it < 64 && q1 <= max_den; ++it) {
    for (long s : {1L, -1L}) {
      long k = s * p1, l = s * q1;
      if (k == 0 && l == 0) continue;
      Mat m = mat_pow(a, k) * mat_pow(b, l);
      if (m.is_identity()) return std::make_pair(k, l);
      if (scaled(m, -1).is_identity()) return std::make_pair(2 * k, 2 * l);
    }
    if (frac < 1e-12) break;
    double inv = 1 / frac;
    long d = static_cast<long>(std::floor(inv));
    frac = inv - std::floor(inv);
    long p2 = d * p1 + p0, q2 = d * q1 + q0;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
  }
  return std::nullopt;
}

inline double log_spectral_radius(const Mat& a) {
  // crude bound, ordering only
  double s = 0;
  for (const auto& x : a.entries()) s = std::max(s, std::abs(x.get_d()));
  return std::log(std::max(s * static_cast<double>(a.dim()), 1e-300));
}

}  // namespace detail

/// Decides whether some (k, l) != (0, 0) has A^k B^l = I.
///
/// For symmetric integer 2x2 input every branch is exact:
///  - a relation forces det(A)^k det(B)^l = 1, so (k, l) lies in the
///    determinant lattice L;
///  - commuting A, B with L = Z g: A^g1 B^g2 is symmetric of determinant 1, so
///    it has finite order only when it is +-I;
///  - commuting with rank L = 2: both are units of one real quadratic order,
///    hence dependent; the relation is located from logarithms and verified;
///  - non-commuting: a relation forces A^k and B^l scalar, which needs both
///    traceless, and then A^2 and B^2 are the scalars -det.
/// Other inputs use power_equality when both spectra are rational and a
/// bounded scan otherwise, which may end undecided.
inline PairVerdict pair_dependent(const Mat& a, const Mat& b, long kmax) {
  detail::require_invertible({a, b}, "pair_dependent");
  if (a == b) return detail::found(1, -1, "equal");
  const Rational da = determinant(a), db = determinant(b);
  RelationLattice dl = relation_lattice({{da, db}});
  if (dl.rank() == 0) return {PairKind::independent, std::nullopt, "determinant"};

  if (detail::is_integer_sym2(a) && detail::is_integer_sym2(b)) {
    if (commute(a, b)) {
      if (dl.rank() == 1) {
        long p = to_long(dl.basis[0][0]), q = to_long(dl.basis[0][1]);
        Mat m = mat_pow(a, p) * mat_pow(b, q);
        if (m.is_identity()) return detail::found(p, q, "determinant-line");
        if (scaled(m, -1).is_identity()) return detail::found(2 * p, 2 * q, "determinant-line");
        return {PairKind::independent, std::nullopt, "determinant-line"};
      }
      if (auto w = detail::unit_relation(a, b, 1L << 20)) return detail::found(w->first, w->second, "unit");
      if (auto ta = torsion_order(a)) return detail::found(*ta, 0, "torsion");
      if (auto tb = torsion_order(b)) return detail::found(0, *tb, "torsion");
    } else {
      const bool traceless = a(0, 0) + a(1, 1) == 0 && b(0, 0) + b(1, 1) == 0;
      if (!traceless) return {PairKind::independent, std::nullopt, "non-commuting"};
      RelationLattice sq = relation_lattice({{Rational(-da), Rational(-db)}});
      if (sq.rank() == 0) return {PairKind::independent, std::nullopt, "traceless"};
      long p = to_long(sq.basis[0][0]), q = to_long(sq.basis[0][1]);
      if (!detail::verifies(a, b, 2 * p, 2 * q))
        throw std::logic_error("pair_dependent: traceless witness fails exact verification");
      return detail::found(2 * p, 2 * q, "traceless");
    }
  }

  if (rational_eigensystem(a) && rational_eigensystem(b)) {
    auto pe = power_equality(a, mat_inverse(b));
    if (pe.subgroup.rank() == 0) return {PairKind::independent, std::nullopt, "power-equality"};
    const IntVec& w = pe.subgroup.basis[0];
    return detail::found(to_long(w[0]), to_long(w[1]), "power-equality");
  }

  // Bounded scan of determinant-lattice points, most promising first.
  const double la = detail::log_spectral_radius(a), lb = detail::log_spectral_radius(b);
  std::vector<std::tuple<double, long, long>> cand;
  for (long k = -kmax; k <= kmax; ++k)
    for (long l = -kmax; l <= kmax; ++l)
      if ((k != 0 || l != 0) && dl.contains({k, l}))
        cand.emplace_back(std::abs(k * la + l * lb), k, l);
  std::sort(cand.begin(), cand.end());
  auto pa = detail::power_range(a, kmax), pb = detail::power_range(b, kmax);
  for (auto [score, k, l] : cand)
    if ((pa[static_cast<std::size_t>(k + kmax)] * pb[static_cast<std::size_t>(l + kmax)]).is_identity())
      return detail::found(k, l, "bounded-scan");
  return {PairKind::undecided, std::nullopt, "bounded-scan"};
}

struct CensusConfig {
  long H = 2;
  long kmax = 0;  ///< 0 means default_kmax(H)
  unsigned workers = 1;
  std::uint64_t seed = 0;
};

struct CensusReport {
  long H = 0;
  long total = 0;      ///< nonsingular symmetric matrices
  long torsion = 0;    ///< of which have finite order
  long dependent = 0;  ///< ordered pairs of non-torsion matrices
  long undecided = 0;
  long dependent_unordered = 0;  ///< {A, B} with A = B allowed
  double seconds = 0;
  long kmax = 0;
  unsigned workers = 1;
};

namespace detail {

/// Smallest r with |n| = r^e, for |n| >= 2; 1 for |n| = 1.
inline long perfect_power_root(long n) {
  n = std::abs(n);
  if (n <= 1) return 1;
  Integer big(n), r;
  for (unsigned long e = static_cast<unsigned long>(mpz_sizeinbase(big.get_mpz_t(), 2)); e >= 2; --e)
    if (mpz_root(r.get_mpz_t(), big.get_mpz_t(), e) != 0) return r.get_si();
  return n;
}

struct PairIndex {
  struct Bucket {
    std::vector<std::size_t> scalars, traceless;
    std::map<std::pair<long, long>, std::vector<std::size_t>> by_direction;
  };
  std::map<long, Bucket> by_root;
  std::vector<long> root;
  std::vector<std::pair<long, long>> direction;  ///< (0, 0) for scalars
};

inline std::pair<long, long> commuting_direction(const Sym2& s) {
  // [[a,b],[b,c]] and [[d,e],[e,f]] commute iff (a-c, b) and (d-f, e) are parallel
  long x = s.a - s.c, y = s.b;
  if (x == 0 && y == 0) return {0, 0};
  long g = std::gcd(x, y);
  x /= g, y /= g;
  if (x < 0 || (x == 0 && y < 0)) x = -x, y = -y;
  return {x, y};
}

}  // namespace detail

/// Ordered pairs (A, B) of non-torsion matrices from enumerate_symmetric(H)
/// with A^k B^l = I for some (k, l) != 0. Candidates are restricted to pairs
/// whose |determinants| share a perfect-power root and which either commute or
/// are both traceless; every other pair is independent.
inline CensusReport census_pairs(const CensusConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  CensusReport rep;
  rep.H = cfg.H;
  rep.kmax = cfg.kmax > 0 ? cfg.kmax : default_kmax(Integer(cfg.H));
  rep.workers = std::max(1u, cfg.workers);
  const auto all = enumerate_symmetric_entries(cfg.H);
  rep.total = static_cast<long>(all.size());

  std::vector<Sym2> mats;
  for (const auto& s : all) {
    if (torsion_order(s.mat()))
      ++rep.torsion;
    else
      mats.push_back(s);
  }
  detail::PairIndex idx;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    long r = detail::perfect_power_root(mats[i].det());
    auto d = detail::commuting_direction(mats[i]);
    idx.root.push_back(r);
    idx.direction.push_back(d);
    auto& bucket = idx.by_root[r];
    if (d == std::pair<long, long>{0, 0})
      bucket.scalars.push_back(i);
    else
      bucket.by_direction[d].push_back(i);
    if (mats[i].a + mats[i].c == 0) bucket.traceless.push_back(i);
  }

  // Worker w handles rows i = w, w + W, ...; pairs with i <= j are decided once
  // and counted for both orders.
  struct Partial {
    long dependent = 0, undecided = 0;
  };
  std::vector<Partial> parts(rep.workers);
  auto work = [&](unsigned w) {
    Partial& out = parts[w];
    for (std::size_t i = w; i < mats.size(); i += rep.workers) {
      const auto& bucket = idx.by_root.at(idx.root[i]);
      std::vector<std::size_t> partners;
      if (idx.direction[i] == std::pair<long, long>{0, 0}) {
        partners = bucket.scalars;
        for (const auto& [d, v] : bucket.by_direction) partners.insert(partners.end(), v.begin(), v.end());
      } else {
        partners = bucket.scalars;
        const auto& same = bucket.by_direction.at(idx.direction[i]);
        partners.insert(partners.end(), same.begin(), same.end());
        if (mats[i].a + mats[i].c == 0)
          for (std::size_t j : bucket.traceless)
            if (idx.direction[j] != idx.direction[i]) partners.push_back(j);
      }
      const Mat a = mats[i].mat();
      for (std::size_t j : partners) {
        if (j < i) continue;
        auto v = pair_dependent(a, mats[j].mat(), rep.kmax);
        const long weight = i == j ? 1 : 2;
        if (v.kind == PairKind::witness) out.dependent += weight;
        if (v.kind == PairKind::undecided) out.undecided += weight;
      }
    }
  };
  if (rep.workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < rep.workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& p : parts) {
    rep.dependent += p.dependent;
    rep.undecided += p.undecided;
  }
  rep.dependent_unordered = (rep.dependent + static_cast<long>(mats.size())) / 2;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Fixed determinant, divisors, smooth numbers

/// #{[[a,b],[b,c]] : |a|,|b|,|c| <= H, ac - b^2 = d} by scanning all triples.
inline long count_fixed_det_naive(long h, long d) {
  long n = 0;
  for (long a = -h; a <= h; ++a)
    for (long b = -h; b <= h; ++b)
      for (long c = -h; c <= h; ++c)
        if (a * c - b * b == d) ++n;
  return n;
}

/// Same count from "a divides b^2 + d": for each b, pair every divisor a of
/// b^2 + d with c = (b^2 + d) / a.
inline long count_fixed_det_divisor(long h, long d) {
  long n = 0;
  for (long b = -h; b <= h; ++b) {
    const long m = b * b + d;
    if (m == 0) {
      n += 2 * (2 * h + 1) - 1;  // ac = 0
      continue;
    }
    const long am = std::abs(m);
    auto count = [&](long a) {  // a and -a, with c = m / a
      if (a <= h && am / a <= h) n += 2;
    };
    for (long x = 1; x * x <= am; ++x) {
      if (am % x) continue;
      count(x);
      if (x != am / x) count(am / x);
    }
  }
  return n;
}

/// Both methods, which must agree.
inline long count_fixed_det(long h, long d) {
  if (h < 1) throw invalid_input("count_fixed_det: H must be positive");
  if (d == 0) throw invalid_input("count_fixed_det: d must be nonzero");
  long x = count_fixed_det_naive(h, d), y = count_fixed_det_divisor(h, d);
  if (x != y) throw std::logic_error("count_fixed_det: naive and divisor counts differ");
  return x;
}

/// counts[d + dmax][H - 1] = #S(H, d) for 1 <= H <= hmax and 0 < |d| <= dmax,
/// from one scan of the largest box binned by height.
inline std::vector<std::vector<long>> fixed_det_table_naive(long hmax, long dmax) {
  std::vector<std::vector<long>> t(static_cast<std::size_t>(2 * dmax + 1), std::vector<long>(static_cast<std::size_t>(hmax) + 1));
  for (long a = -hmax; a <= hmax; ++a)
    for (long b = -hmax; b <= hmax; ++b)
      for (long c = -hmax; c <= hmax; ++c) {
        const long d = a * c - b * b;
        if (d == 0 || d < -dmax || d > dmax) continue;
        const long ht = std::max({std::abs(a), std::abs(b), std::abs(c)});
        ++t[static_cast<std::size_t>(d + dmax)][static_cast<std::size_t>(ht)];
      }
  std::vector<std::vector<long>> out(t.size(), std::vector<long>(static_cast<std::size_t>(hmax)));
  for (std::size_t i = 0; i < t.size(); ++i) {
    long run = t[i][0];
    for (long hh = 1; hh <= hmax; ++hh) {
      run += t[i][static_cast<std::size_t>(hh)];
      out[i][static_cast<std::size_t>(hh - 1)] = run;
    }
  }
  return out;
}

/// Number of positive divisors.
inline long tau(const Integer& m) {
  if (m < 1) throw invalid_input("tau: argument must be positive");
  long n = 1;
  for (long e : factorize(m).exponents) n *= e + 1;
  return n;
}

/// #{1 <= u <= U : every prime divisor of u divides Q}.
inline long smooth_count(const Integer& q, double u) {
  if (q < 1) throw invalid_input("smooth_count: Q must be positive");
  if (!(u >= 1)) throw invalid_input("smooth_count: U must be at least 1");
  const Integer limit(std::floor(u));
  const auto primes = factorize(q).primes;
  long n = 0;
  // depth-first over exponent vectors in increasing prime order
  auto rec = [&](auto&& self, std::size_t i, const Integer& cur) -> void {
    if (i == primes.size()) {
      ++n;
      return;
    }
    for (Integer x = cur; x <= limit; x *= primes[i]) self(self, i + 1, x);
  };
  rec(rec, 0, Integer(1));
  return n;
}

// ---------------------------------------------------------------------------
// Tuples

struct DependentTuple {
  std::vector<Mat> tuple;
  std::vector<Mat> factors;  ///< the diagonal B_i
  IntVec witness;            ///< +1, -1, +1, ...
};

/// True if some nonzero k in [-kmax, kmax]^s has prod A_i^k_i = I.
inline bool tuple_dependent_within(const std::vector<Mat>& as, long kmax) {
  for (const auto& h : detail::identity_hits_in_box(as, kmax))
    if (!is_zero(h)) return true;
  return false;
}

/// A nonzero k with all coordinates nonzero, if one exists in the box.
inline std::optional<IntVec> full_relation_within(const std::vector<Mat>& as, long kmax) {
  for (const auto& h : detail::identity_hits_in_box(as, kmax))
    if (std::none_of(h.begin(), h.end(), [](const Integer& x) { return x == 0; })) return h;
  return std::nullopt;
}

/// Some nonempty proper subtuple is dependent within the box.
inline bool has_dependent_subtuple(const std::vector<Mat>& as, long kmax) {
  const std::size_t s = as.size();
  for (unsigned long mask = 1; mask + 1 < (1UL << s); ++mask) {
    std::vector<Mat> sub;
    for (std::size_t i = 0; i < s; ++i)
      if (mask >> i & 1) sub.push_back(as[i]);
    if (tuple_dependent_within(sub, kmax)) return true;
  }
  return false;
}

/// Diagonal B_i with entries in [-K, K] \ {0}, each det B_i owning a prime
/// that divides no other det B_j, assembled cyclically so that
///   A1 A2^-1 A3 A4^-1 ... = I.
/// Even s: A_{2i-1} = B_{2i-1} B_{2i}, A_{2i} = B_{2i+1} B_{2i}, B_{s+1} = B_1.
/// Odd s = 2r+1: B_0 = I, A_{2i-1} = B_{2i-2} B_{2i-1}, A_{2i} = B_{2i} B_{2i-1},
/// A_{2r+1} = B_{2r}.
inline DependentTuple build_dependent_tuple(std::size_t s, long k, std::uint64_t seed) {
  if (s < 3) throw invalid_input("build_dependent_tuple: s must be at least 3");
  const std::size_t nb = s % 2 == 0 ? s : s - 1;
  long primes_upto_k = 0;
  for (long p = 2; p <= k; ++p) primes_upto_k += detail::is_probable_prime(Integer(p));
  if (primes_upto_k < static_cast<long>(nb))
    throw invalid_input("build_dependent_tuple: entry bound too small for distinct private primes");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(-k, k - 1);
  auto entry = [&] {
    long x = pick(rng);
    return x >= 0 ? x + 1 : x;
  };
  std::vector<std::vector<long>> diag(nb, std::vector<long>(2));
  std::vector<std::vector<Integer>> support(nb);
  auto sample = [&](std::size_t i) {
    for (auto& x : diag[i]) x = entry();
    support[i] = factorize(diag[i][0] * diag[i][1]).primes;
  };
  for (std::size_t i = 0; i < nb; ++i) sample(i);
  auto lacking = [&]() -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < nb; ++i) {
      bool owns = false;
      for (const auto& p : support[i]) {
        bool elsewhere = false;
        for (std::size_t j = 0; j < nb && !elsewhere; ++j)
          if (j != i) elsewhere = std::find(support[j].begin(), support[j].end(), p) != support[j].end();
        owns = owns || !elsewhere;
      }
      if (!owns) return i;
    }
    return std::nullopt;
  };
  // Resampling one factor can stall when the others already cover every
  // prime up to K, so start over now and then.
  for (long round = 1; auto i = lacking(); ++round) {
    if (round % 32 == 0) {
      for (std::size_t j = 0; j < nb; ++j) sample(j);
    } else {
      sample(*i);
    }
  }

  DependentTuple out;
  for (const auto& d : diag) out.factors.push_back(Mat::diag({d[0], d[1]}));
  auto bf = [&](std::size_t i) -> Mat {  // 1-based B_i, with B_0 = I and B_{s+1} = B_1
    if (i == 0) return Mat::identity(2);
    return out.factors[(i - 1) % nb];
  };
  if (s % 2 == 0) {
    for (std::size_t i = 1; 2 * i <= s; ++i) {
      out.tuple.push_back(bf(2 * i - 1) * bf(2 * i));
      out.tuple.push_back(bf(2 * i + 1) * bf(2 * i));
    }
  } else {
    const std::size_t r = s / 2;
    for (std::size_t i = 1; i <= r; ++i) {
      out.tuple.push_back(bf(2 * i - 2) * bf(2 * i - 1));
      out.tuple.push_back(bf(2 * i) * bf(2 * i - 1));
    }
    out.tuple.push_back(bf(2 * r));
  }
  for (std::size_t i = 0; i < s; ++i) out.witness.emplace_back(i % 2 == 0 ? 1 : -1);
  if (!power_product(out.tuple, out.witness).is_identity())
    throw std::logic_error("build_dependent_tuple: alternating product is not the identity");
  return out;
}

struct TupleCensusReport {
  std::size_t s = 0;
  long H = 0;
  long kmax = 0;
  std::string mode;     ///< "exhaustive" or "sampled"
  Integer total;        ///< ordered s-tuples of nonsingular matrices
  long examined = 0;    ///< unordered tuples (exhaustive) or samples
  Integer dependent;    ///< ordered tuples (exhaustive) or samples
  Integer undecided;
  double estimate = 0;  ///< sampled: dependent fraction times total
  double std_error = 0;
  std::uint64_t seed = 0;
};

/// Exhaustive (s = 3): ordered triples of distinct matrices with a relation in
/// which every exponent is nonzero and no dependent pair or torsion member.
/// Dependence of pairs is decided by pair_dependent; triples by the
/// determinant lattice followed by a search of [-kmax, kmax]^3. Triples that
/// pass the determinant test without a relation in the box are undecided.
/// Sampled (any s): uniform tuples with replacement, screened within the box.
inline TupleCensusReport census_tuples(std::size_t s, long h, long kmax, std::optional<long> sample_size,
                                       std::uint64_t seed = 0) {
  if (s < 3) throw invalid_input("census_tuples: s must be at least 3");
  if (kmax < 1) throw invalid_input("census_tuples: kmax must be positive");
  TupleCensusReport rep;
  rep.s = s, rep.H = h, rep.kmax = kmax, rep.seed = seed;
  const auto entries = enumerate_symmetric_entries(h);
  std::vector<Mat> mats;
  for (const auto& e : entries) mats.push_back(e.mat());
  const std::size_t n = mats.size();
  rep.total = pow(Integer(static_cast<long>(n)), static_cast<unsigned long>(s));

  if (sample_size) {
    rep.mode = "sampled";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    long hits = 0;
    for (long t = 0; t < *sample_size; ++t) {
      std::vector<Mat> tup;
      for (std::size_t i = 0; i < s; ++i) tup.push_back(mats[pick(rng)]);
      ++rep.examined;
      if (full_relation_within(tup, kmax) && !has_dependent_subtuple(tup, kmax)) ++hits;
    }
    rep.dependent = hits;
    if (rep.examined > 0) {
      const double p = static_cast<double>(hits) / static_cast<double>(rep.examined);
      rep.estimate = p * rep.total.get_d();
      rep.std_error = std::sqrt(p * (1 - p) / static_cast<double>(rep.examined)) * rep.total.get_d();
    }
    return rep;
  }

  if (s != 3) throw invalid_input("census_tuples: exhaustive mode needs s = 3");
  rep.mode = "exhaustive";
  std::vector<char> torsion(n);
  std::vector<Rational> det(n);
  for (std::size_t i = 0; i < n; ++i) {
    torsion[i] = torsion_order(mats[i]).has_value();
    det[i] = determinant(mats[i]);
  }
  // pair status: 0 independent, 1 dependent, 2 undecided
  std::vector<std::vector<char>> pair(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (torsion[i] || torsion[j]) continue;
      auto v = pair_dependent(mats[i], mats[j], kmax);
      pair[i][j] = pair[j][i] = v.kind == PairKind::witness ? 1 : v.kind == PairKind::undecided ? 2 : 0;
    }
  auto pw = [&] {
    std::vector<std::vector<Mat>> t;
    for (const auto& m : mats) t.push_back(detail::power_range(m, kmax));
    return t;
  }();
  auto power = [&](std::size_t i, long k) -> const Mat& { return pw[i][static_cast<std::size_t>(k + kmax)]; };

  long dependent = 0, undecided = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (torsion[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (torsion[j] || pair[i][j] == 1) continue;
      std::unordered_map<Mat, char, MatHash> left;
      bool built = false;
      for (std::size_t m = j + 1; m < n; ++m) {
        if (torsion[m] || pair[i][m] == 1 || pair[j][m] == 1) continue;
        ++rep.examined;
        auto dl = relation_lattice({{det[i], det[j], det[m]}});
        if (!nonvanishing_vector(dl)) continue;
        if (!built) {
          for (long k = -kmax; k <= kmax; ++k)
            for (long l = -kmax; l <= kmax; ++l)
              if (k != 0 && l != 0) left.emplace(power(i, k) * power(j, l), 1);
          built = true;
        }
        bool hit = false;
        for (long t = 1; t <= kmax && !hit; ++t) hit = left.count(power(m, t)) || left.count(power(m, -t));
        const bool unsure = pair[i][j] == 2 || pair[i][m] == 2 || pair[j][m] == 2;
        if (hit && !unsure)
          ++dependent;
        else
          ++undecided;
      }
    }
  }
  rep.dependent = Integer(dependent) * 6;
  rep.undecided = Integer(undecided) * 6;
  return rep;
}

}  // namespace matknap
