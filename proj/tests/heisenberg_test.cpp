#include "matknap/heisenberg.hpp"

#include <random>
#include <set>

#include "generators.hpp"
#include "gtest/gtest.h"
#include "heis_oracle.hpp"

namespace matknap {
namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

std::set<std::vector<long>> returned(const HeisSolutionSet& s, std::size_t dim, long bound) {
  std::set<std::vector<long>> out;
  for (const auto& k : oracle::box_points(dim, bound))
    if (s.contains(IntVec(k.begin(), k.end()))) out.insert(k);
  return out;
}

using gen::plant;
using gen::random_heis;

TEST(HeisArithmetic, Examples) {
  Heis m{q(2), q(-1, 3), q(5)};
  EXPECT_EQ(heis_mul(heis_identity<Rational>(), m), m);
  EXPECT_EQ(heis_mul(Heis{1, 0, 0}, Heis{0, 1, 0}), (Heis{1, 1, 1}));
  EXPECT_EQ(heis_mul(m, Heis{-m.a, -m.b, -m.c + m.a * m.b}), heis_identity<Rational>());
  EXPECT_EQ(heis_pow(m, Rational(0)), heis_identity<Rational>());
  EXPECT_EQ(heis_pow(Heis{1, 1, 0}, Rational(2)), (Heis{2, 2, 1}));
  EXPECT_EQ(heis_pow(Heis{1, 1, 0}, Rational(-1)), (Heis{-1, -1, 1}));
  EXPECT_EQ(to_mat(heis_mul(m, Heis{1, 2, 3})), to_mat(m) * to_mat(Heis{1, 2, 3}));
  EXPECT_EQ(from_mat(to_mat(m)), m);
  EXPECT_THROW(from_mat(Mat::diag({2, 1, 1})), invalid_input);
}

TEST(HeisArithmetic, PowMatchesIteratedProduct) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    Heis m = random_heis(rng);
    Heis up = heis_identity<Rational>(), down = up, inv = heis_inverse(m);
    for (long k = 0; k <= 50; ++k) {
      ASSERT_EQ(heis_pow(m, Rational(k)), up);
      ASSERT_EQ(heis_pow(m, Rational(-k)), down);
      up = heis_mul(up, m);
      down = heis_mul(down, inv);
    }
  }
}

TEST(HeisSystem, MatchesDisplayedEquations) {
  HeisSymbols s{3};
  auto sys = symbolic_system(s);
  MPoly l1, l2, p3;
  for (std::size_t i = 0; i < 3; ++i) {
    l1 = l1 + s.a(i) * s.k(i);
    l2 = l2 + s.b(i) * s.k(i);
    p3 = p3 + s.c(i) * s.k(i) - MPoly(q(1, 2)) * s.a(i) * s.b(i) * s.k(i);
  }
  p3 = p3 + MPoly(q(1, 2)) * (s.a(1) * s.b(2) - s.a(2) * s.b(1)) * s.k(1) * s.k(2);
  EXPECT_EQ(sys.a, l1);
  EXPECT_EQ(sys.b, l2);
  // Equal once the two linear equations hold.
  MPoly half(q(1, 2));
  MPoly gap = half * l1 * l2 + half * s.k(0) * (s.a(0) * l2 - s.b(0) * l1);
  EXPECT_EQ(sys.c - p3, gap) << (sys.c - p3).str(s.names());
}

TEST(SolveTriple, Examples) {
  auto a = solve_triple({1, 0, 0}, {-1, 0, 0}, {0, 0, 0});
  EXPECT_EQ(a.kind, HeisKind::lattice_with_nonzero_filter);
  EXPECT_TRUE(a.contains({3, 3, -7}));
  EXPECT_FALSE(a.contains({3, 2, 1}));
  EXPECT_FALSE(a.contains({3, 3, 0}));
  EXPECT_EQ(returned(a, 3, 6), oracle::heis_hits({{1, 0, 0}, {-1, 0, 0}, {0, 0, 0}}, 6));

  auto b = solve_triple({1, 0, 0}, {0, 1, 0}, {-1, 1, 1});
  EXPECT_EQ(b.kind, HeisKind::finite);
  EXPECT_EQ(b.finite_solutions, (std::vector<IntVec>{{3, -3, 3}}));
  EXPECT_EQ(b.branch, "line");
  EXPECT_EQ(returned(b, 3, 10), oracle::heis_hits({{1, 0, 0}, {0, 1, 0}, {-1, 1, 1}}, 10));
}

TEST(SolveTriple, QuadraticRootDecidesMembership) {
  // Along (u, -u, u) the (1,3) entry is u c3 - u(u - 1)/2, so the root is 2 c3 + 1.
  auto a = solve_triple({1, 0, 0}, {0, 1, 0}, {-1, 1, 5});
  EXPECT_EQ(a.kind, HeisKind::finite);
  EXPECT_EQ(a.finite_solutions, (std::vector<IntVec>{{11, -11, 11}}));
  EXPECT_EQ(returned(a, 3, 12), oracle::heis_hits({{1, 0, 0}, {0, 1, 0}, {-1, 1, 5}}, 12));

  auto b = solve_triple({1, 0, 0}, {0, 1, 0}, {-1, 1, q(1, 4)});
  EXPECT_EQ(b.kind, HeisKind::empty);
  EXPECT_TRUE(oracle::heis_hits({{1, 0, 0}, {0, 1, 0}, {-1, 1, q(1, 4)}}, 12).empty());

  auto c = solve_triple({1, 0, 0}, {0, 1, 0}, {-1, 1, q(-1, 2)});  // root 0
  EXPECT_EQ(c.kind, HeisKind::empty);
}

TEST(SolveTriple, PlantedInstances) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> kk(1, 6), sign(0, 1);
  for (int it = 0; it < 50; ++it) {
    Heis a1 = random_heis(rng), a2 = random_heis(rng);
    auto pick = [&] { return sign(rng) ? kk(rng) : -kk(rng); };
    long k1 = pick(), k2 = pick(), k3 = pick();
    Heis a3 = plant(a1, a2, k1, k2, k3);
    auto sol = solve_triple(a1, a2, a3);
    ASSERT_TRUE(sol.contains({k1, k2, k3})) << it;
    ASSERT_NE(sol.kind, HeisKind::empty);
    ASSERT_TRUE(sol.witness);
    EXPECT_TRUE(heis_word_is_identity({a1, a2, a3}, *sol.witness));
  }
}

TEST(SolveTriple, BoxCompleteness) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> kk(1, 4), sign(0, 1);
  for (int it = 0; it < 12; ++it) {
    Heis a1 = random_heis(rng, 3), a2 = random_heis(rng, 3), a3;
    auto pick = [&] { return sign(rng) ? kk(rng) : -kk(rng); };
    switch (it % 4) {
      case 0: a3 = plant(a1, a2, pick(), pick(), pick()); break;
      case 1:  // proportional a and b vectors
        a1.b = 2 * a1.a, a2.b = 2 * a2.a;
        a3 = plant(a1, a2, pick(), pick(), pick());
        break;
      case 2: a3 = random_heis(rng, 3); break;
      default: a2 = heis_inverse(a1), a3 = {0, 0, random_heis(rng).c}; break;
    }
    std::vector<Heis> w{a1, a2, a3};
    auto sol = solve_triple(a1, a2, a3);
    ASSERT_EQ(returned(sol, 3, 12), oracle::heis_hits(w, 12)) << it;
  }
}

TEST(SolvePair, Examples) {
  Heis a{2, q(-1, 3), 5};
  auto inv = solve_pair(a, heis_inverse(a));
  EXPECT_EQ(inv.kind, HeisKind::lattice_with_nonzero_filter);
  EXPECT_TRUE(inv.contains({4, 4}));
  EXPECT_FALSE(inv.contains({4, 3}));

  EXPECT_EQ(solve_pair({1, 0, 0}, {0, 1, 0}).kind, HeisKind::empty);

  auto c = solve_pair({2, 1, 0}, {-1, q(-1, 2), q(1, 4)});
  EXPECT_EQ(c.kind, HeisKind::empty);
  EXPECT_TRUE(oracle::heis_hits({{2, 1, 0}, {-1, q(-1, 2), q(1, 4)}}, 40).empty());
}

TEST(SolvePair, MatchesBruteForce) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> kk(1, 5), sign(0, 1);
  for (int it = 0; it < 40; ++it) {
    Heis a1 = random_heis(rng, 3), a2;
    long k1 = sign(rng) ? kk(rng) : -kk(rng), k2 = kk(rng);
    if (it % 2 == 0) {
      // a2 on the same line so the linear equations have a rank-1 kernel.
      a2 = {-a1.a * k1 / k2, -a1.b * k1 / k2, random_heis(rng).c};
    } else {
      a2 = random_heis(rng, 3);
    }
    auto sol = solve_pair(a1, a2);
    ASSERT_EQ(returned(sol, 2, 40), oracle::heis_hits({a1, a2}, 40)) << it;
  }
}

}  // namespace
}  // namespace matknap
