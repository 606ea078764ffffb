#include "matknap/census.hpp"

#include <random>

#include "census_oracle.hpp"
#include "gtest/gtest.h"

namespace matknap {
namespace {

TEST(Enumerate, CountsAndOrder) {
  for (long h = 1; h <= 4; ++h) EXPECT_EQ(enumerate_symmetric(h).size(), oracle::symmetric_box(h).size());
  auto e = enumerate_symmetric_entries(1);
  EXPECT_TRUE(std::is_sorted(e.begin(), e.end(), [](const Sym2& x, const Sym2& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  }));
  EXPECT_EQ(std::find(e.begin(), e.end(), Sym2{1, 1, 1}), e.end());
  EXPECT_NE(std::find(e.begin(), e.end(), Sym2{1, 0, 1}), e.end());
  EXPECT_THROW(enumerate_symmetric(0), invalid_input);
}

TEST(PairDependent, Examples) {
  Mat a{{2, 1}, {1, 1}};
  auto same = pair_dependent(a, a, 12);
  EXPECT_EQ(same.kind, PairKind::witness);
  EXPECT_EQ(same.witness, std::make_pair(1L, -1L));

  EXPECT_EQ(pair_dependent(Mat::diag({2, 1}), Mat::diag({3, 1}), 12).kind, PairKind::independent);

  auto scalars = pair_dependent(Mat::diag({2, 2}), Mat::diag({4, 4}), 12);
  ASSERT_EQ(scalars.kind, PairKind::witness);
  auto [k, l] = *scalars.witness;
  EXPECT_TRUE((mat_pow(Mat::diag({2, 2}), k) * mat_pow(Mat::diag({4, 4}), l)).is_identity());

  // Units of the same quadratic order: [[2,1],[1,1]]^2 = [[5,3],[3,2]].
  auto unit = pair_dependent(a, Mat{{5, 3}, {3, 2}}, 12);
  ASSERT_EQ(unit.kind, PairKind::witness);
  EXPECT_TRUE((mat_pow(a, unit.witness->first) * mat_pow(Mat{{5, 3}, {3, 2}}, unit.witness->second)).is_identity());

  // Traceless, non-commuting: squares are scalar.
  Mat t1{{1, 1}, {1, -1}}, t2{{0, 2}, {2, 0}};
  auto tr = pair_dependent(t1, t2, 12);
  ASSERT_EQ(tr.kind, PairKind::witness);
  EXPECT_TRUE((mat_pow(t1, tr.witness->first) * mat_pow(t2, tr.witness->second)).is_identity());

  EXPECT_EQ(pair_dependent(Mat{{1, 1}, {1, 2}}, Mat{{2, 1}, {1, 2}}, 12).kind, PairKind::independent);
}

TEST(PairDependent, AgreesWithPowerTablesAtSmallHeight) {
  auto ms = enumerate_symmetric(2);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (oracle::finite_order(ms[i])) continue;
    auto ti = oracle::power_table(ms[i], 12);
    for (std::size_t j = i; j < ms.size(); ++j) {
      if (oracle::finite_order(ms[j])) continue;
      auto tj = oracle::power_table(ms[j], 12);
      bool brute = false;
      for (std::size_t x = 0; x < ti.size() && !brute; ++x)
        for (std::size_t y = 0; y < tj.size() && !brute; ++y) brute = x != 12 && y != 12 && ti[x] == tj[y];
      auto v = pair_dependent(ms[i], ms[j], 12);
      ASSERT_NE(v.kind, PairKind::undecided);
      ASSERT_EQ(v.kind == PairKind::witness, brute) << ms[i] << " " << ms[j] << " " << v.route;
    }
  }
}

TEST(CensusPairs, MatchesOracle) {
  for (long h : {1L, 2L, 3L}) {
    auto rep = census_pairs({h, 0, 1, 0});
    auto ref = oracle::pair_census(h, 12);
    EXPECT_EQ(rep.total, ref.total) << h;
    EXPECT_EQ(rep.torsion, ref.torsion) << h;
    EXPECT_EQ(rep.dependent, ref.dependent) << h;
    EXPECT_EQ(rep.undecided, 0) << h;
    EXPECT_EQ(rep.dependent_unordered, (rep.dependent + rep.total - rep.torsion) / 2);
  }
}

TEST(CensusPairs, SameCountsForAnyWorkerCount) {
  auto base = census_pairs({4, 0, 1, 0});
  for (unsigned w : {2U, 8U}) {
    auto rep = census_pairs({4, 0, w, 0});
    EXPECT_EQ(rep.total, base.total);
    EXPECT_EQ(rep.torsion, base.torsion);
    EXPECT_EQ(rep.dependent, base.dependent);
    EXPECT_EQ(rep.undecided, base.undecided);
  }
}

TEST(CensusPairs, SandwichBound) {
  for (long h : {2L, 4L, 6L}) {
    auto rep = census_pairs({h, 0, 2, 0});
    EXPECT_GE(rep.dependent, rep.total - rep.torsion);
    EXPECT_LE(rep.dependent, (rep.total - rep.torsion) * (rep.total - rep.torsion));
  }
}

TEST(FixedDet, Examples) {
  // ac - b^2 = 1 with entries in {-1, 0, 1}: (1,0,1), (-1,0,-1).
  EXPECT_EQ(count_fixed_det_naive(1, 1), 2);
  EXPECT_EQ(count_fixed_det(1, 1), 2);
  // ac - b^2 = -1: b = +-1 with ac = 0 (5 each), b = 0 with ac = -1 (2).
  EXPECT_EQ(count_fixed_det(1, -1), 12);
  EXPECT_EQ(count_fixed_det(2, 100), 0);
  EXPECT_THROW(count_fixed_det(2, 0), invalid_input);
}

TEST(FixedDet, MethodsAgree) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> hh(1, 60), dd(-40, 40);
  for (int it = 0; it < 200; ++it) {
    long h = hh(rng), d = dd(rng);
    if (d == 0) continue;
    ASSERT_EQ(count_fixed_det_naive(h, d), count_fixed_det_divisor(h, d)) << h << " " << d;
  }
  auto t = fixed_det_table_naive(25, 6);
  for (long d = -6; d <= 6; ++d)
    for (long h = 1; h <= 25; ++h) {
      if (d == 0) continue;
      ASSERT_EQ(t[static_cast<std::size_t>(d + 6)][static_cast<std::size_t>(h - 1)], count_fixed_det_divisor(h, d));
    }
}

TEST(Divisors, TauAndSmoothCount) {
  EXPECT_EQ(tau(1), 1);
  EXPECT_EQ(tau(12), 6);
  EXPECT_EQ(tau(Integer(720720)), 240);
  EXPECT_THROW(tau(0), invalid_input);
  EXPECT_EQ(smooth_count(6, 10), 7);  // 1 2 3 4 6 8 9
  EXPECT_EQ(smooth_count(1, 100), 1);
  for (long qv : {2L, 10L, 30L, 77L, 360L})
    for (long u : {1L, 17L, 200L}) {
      long brute = 0;
      for (long x = 1; x <= u; ++x) {
        long r = x;
        for (long p = 2; p <= r; ++p)
          while (r % p == 0 && qv % p == 0) r /= p;
        brute += r == 1;
      }
      EXPECT_EQ(smooth_count(qv, static_cast<double>(u)), brute) << qv << " " << u;
    }
}

TEST(Tuples, BuiltTuplesAreMinimallyDependent) {
  for (std::size_t s : {3u, 4u, 5u})
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto t = build_dependent_tuple(s, 13, seed);
      ASSERT_EQ(t.tuple.size(), s);
      EXPECT_TRUE(power_product(t.tuple, t.witness).is_identity());
      for (const auto& m : t.tuple)
        for (const auto& x : m.entries()) EXPECT_EQ(x.get_den(), 1);
      EXPECT_FALSE(has_dependent_subtuple(t.tuple, 6)) << s << " " << seed;
      EXPECT_TRUE(full_relation_within(t.tuple, 2));
    }
  EXPECT_EQ(build_dependent_tuple(4, 13, 9).tuple, build_dependent_tuple(4, 13, 9).tuple);
  EXPECT_THROW(build_dependent_tuple(2, 13, 0), invalid_input);
  EXPECT_THROW(build_dependent_tuple(6, 5, 0), invalid_input);
}

TEST(Tuples, ExhaustiveMatchesOracle) {
  EXPECT_EQ(census_tuples(3, 1, 6, std::nullopt).dependent, 0);
  auto rep = census_tuples(3, 2, 4, std::nullopt);
  EXPECT_EQ(rep.mode, "exhaustive");
  EXPECT_GT(rep.dependent, 0);
  EXPECT_EQ(rep.dependent, oracle::tuple_census(2, 4, 12));
}

TEST(Tuples, Sampled) {
  auto none = census_tuples(4, 2, 4, 0);
  EXPECT_EQ(none.mode, "sampled");
  EXPECT_EQ(none.examined, 0);
  EXPECT_EQ(none.estimate, 0);

  auto a = census_tuples(3, 2, 4, 200, 5), b = census_tuples(3, 2, 4, 200, 5);
  EXPECT_EQ(a.dependent, b.dependent);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.examined, 200);
  EXPECT_THROW(census_tuples(4, 2, 4, std::nullopt), invalid_input);
}

}  // namespace
}  // namespace matknap
