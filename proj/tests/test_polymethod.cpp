#include <gtest/gtest.h>

#include <random>

#include "dpseq/polymethod.hpp"
#include "dpseq/sequencing.hpp"

using namespace dpseq;

TEST(BuildPi, ThreeTwoFactors) {
  const auto pi = build_pi(3, 2);
  EXPECT_EQ(pi.forms.size(), 7u);
  EXPECT_EQ(pi.degree(), 7);
  EXPECT_EQ(to_string(pi), "(-x1+x2)(-x1+x3)(-x2+x3)(-y1+y2)(x1-x2-x3+y1-y2)(-x2-x3+y1-y2)(-x2-x3)");
  EXPECT_EQ(coefficient_of(pi, parse_monomial("x1^2 x2 x3^2 y1 y2", 3, 2)), 6);
}

TEST(BuildPi, Degrees) {
  EXPECT_EQ(build_pi(1, 4).degree(), 9);
  EXPECT_EQ(build_pi(8, 1).degree(), 40);
  EXPECT_EQ(build_pi(1, 8).degree(), 41);
  EXPECT_THROW(build_pi(0, 3), OutOfScope);
  EXPECT_THROW(build_pi(3, 0), OutOfScope);
  EXPECT_THROW(build_pi(-1, 3), InvalidParameter);
}

TEST(Monomials, ParseAndPrint) {
  const auto t = parse_monomial("x_1^2x_2y_1", 2, 1);
  EXPECT_EQ(t.exps, (std::vector<int>{2, 1, 1}));
  EXPECT_EQ(to_string(t, 2), "x1^2 x2 y1");
  EXPECT_EQ(parse_monomial("x1^2*x2*y1", 2, 1), t);
  EXPECT_THROW(parse_monomial("x3", 2, 1), InvalidParameter);
  EXPECT_TRUE(is_admissible(parse_monomial("x1 x2 y1", 2, 2), 2, 2));
  EXPECT_FALSE(is_admissible(parse_monomial("x1^2", 2, 2), 2, 2));
}

TEST(Coefficients, SelectedRows) {
  EXPECT_EQ(coefficient_of(build_pi(2, 3), parse_monomial("x_2y_1y_2^2y_3^2", 2, 3)), -3);
  EXPECT_EQ(coefficient_of(build_pi(1, 8), parse_monomial("y_2y_3^7y_4^7y_5^7y_6^7y_7^6y_8^6", 1, 8)), 720);
  EXPECT_EQ(coefficient_of(build_pi(4, 4), parse_monomial("x_1^2x_2^2x_3^3x_4^3y_1^3y_2^3y_3^3y_4^3", 4, 4)), -48);
  // wrong total degree is zero by homogeneity
  EXPECT_EQ(coefficient_of(build_pi(3, 2), parse_monomial("x1 x2 y1", 3, 2)), 0);
}

TEST(Tables, SmallSizes) {
  const auto rows = reproduce_table(5);
  ASSERT_EQ(rows.size(), 4u);
  const std::vector<long long> expect = {4, -3, 6, 1};
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].coefficient, expect[i]);
  EXPECT_EQ(rows[3].factors, "-");
  EXPECT_EQ(rows[2].factors, "2,3");
  const auto seven = reproduce_table(7);
  EXPECT_EQ(seven[5].coefficient, -2);
  const auto nine = reproduce_table(9);
  EXPECT_EQ(nine[3].coefficient, 12);
  EXPECT_EQ(nine[0].factors, "2,3,5");
  EXPECT_THROW(reproduce_table(4), InvalidParameter);
  EXPECT_NE(format_table(5, rows).find("|S| = 5"), std::string::npos);
}

TEST(Tables, ComputedDegreeIsMonomialDegree) {
  for (const auto& row : published_rows()) {
    const auto pi = build_pi(row.r, row.k - row.r);
    const auto t = parse_monomial(row.monomial, row.r, row.k - row.r);
    EXPECT_EQ(pi.degree(), t.degree()) << "k=" << row.k << " r=" << row.r;
    EXPECT_TRUE(is_admissible(t, row.r, row.k - row.r));
  }
}

TEST(Oracle, CappedMatchesNaiveOnAllMonomials) {
  for (int r = 1; r <= 4; ++r)
    for (int s = 1; r + s <= 5; ++s) {
      const auto pi = build_pi(r, s);
      const auto naive = expand_naive(pi);
      const auto full = expand_full(pi);
      std::size_t nonzero = 0;
      for (const auto& [e, c] : full.sorted_terms()) {
        auto it = naive.find(e);
        ASSERT_NE(it, naive.end());
        ASSERT_EQ(it->second, c);
        ++nonzero;
      }
      std::size_t naive_nonzero = 0;
      for (const auto& [e, c] : naive) {
        if (c == 0) continue;
        ++naive_nonzero;
        ASSERT_EQ(coefficient_of(pi, MonomialTarget{e}), c) << r << "," << s;
      }
      EXPECT_EQ(nonzero, naive_nonzero);
    }
}

TEST(Oracle, HomogeneousAtEveryStep) {
  const auto pi = build_pi(3, 3);
  expand_capped(pi, std::vector<int>(pi.num_vars(), pi.degree()), [](std::size_t done, const SparsePoly& p) {
    for (const auto& [e, c] : p.sorted_terms()) {
      int d = 0;
      for (int x : e) d += x;
      ASSERT_EQ(d, static_cast<int>(done));
    }
  });
}

TEST(Oracle, EvaluationAgrees) {
  std::mt19937 rng(11);
  for (int r = 1; r <= 5; ++r)
    for (int s = 1; r + s <= 7; ++s) {
      const auto pi = build_pi(r, s);
      const auto full = expand_full(pi);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<BigInt> pt;
        for (int v = 0; v < pi.num_vars(); ++v) pt.push_back(static_cast<int>(rng() % 21) - 10);
        ASSERT_EQ(full.evaluate(pt), pi.evaluate(pt)) << r << "," << s;
      }
    }
}

TEST(NonVanishing, PrimeModuli) {
  const auto t = parse_monomial("x1^2 x2 x3^2 y1 y2", 3, 2);
  EXPECT_TRUE(nonvanishing_applicable(5, 3, 2, t));
  EXPECT_FALSE(nonvanishing_applicable(3, 2, 3, parse_monomial("x_2y_1y_2^2y_3^2", 2, 3)));
  for (const auto& row : published_rows()) {
    const auto m = parse_monomial(row.monomial, row.r, row.k - row.r);
    EXPECT_EQ(nonvanishing_applicable(7, row.r, row.k - row.r, m), row.coefficient % 7 != 0);
  }
  EXPECT_THROW(nonvanishing_applicable(9, 3, 2, t), InvalidParameter);
  EXPECT_THROW(nonvanishing_applicable(5, 3, 2, parse_monomial("x1^3 x2 x3 y1 y2", 3, 2)), InvalidParameter);
}

TEST(FindMonomial, SmallBounds) {
  const auto f = find_admissible_monomial(build_pi(3, 2), 3);
  ASSERT_TRUE(f.has_value());
  EXPECT_TRUE(is_admissible(f->first, 3, 2));
  EXPECT_EQ(coefficient_of(build_pi(3, 2), f->first), f->second);
  const auto g = find_admissible_monomial(build_pi(4, 1), 1);
  ASSERT_TRUE(g.has_value());
  EXPECT_TRUE(g->second == 1 || g->second == -1);
}

// For m = 5 and the (3,2) arrangement, pi is nonzero mod 5 exactly when the
// arrangement is an S-sequencing (rotation exponents taken nonzero).
TEST(Semantics, ThreeTwoModFive) {
  const int m = 5;
  const auto g = FiniteGroup::dihedral(m);
  const auto pi = build_pi(3, 2);
  int agree = 0;
  for (int x1 = 1; x1 < m; ++x1)
    for (int x2 = 1; x2 < m; ++x2)
      for (int x3 = 1; x3 < m; ++x3)
        for (int y1 = 0; y1 < m; ++y1)
          for (int y2 = 0; y2 < m; ++y2) {
            const BigInt val = pi.evaluate({x1, x2, x3, y1, y2});
            const bool nonzero = val % m != 0;
            ElementSequence s{{g.rotation(x1), g.reflection(y1), g.rotation(x2), g.rotation(x3), g.reflection(y2)}};
            ASSERT_EQ(nonzero, is_s_sequencing(g, s)) << x1 << x2 << x3 << y1 << y2;
            ++agree;
          }
  EXPECT_EQ(agree, 4 * 4 * 4 * 5 * 5);
}
