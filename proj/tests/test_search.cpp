#include <gtest/gtest.h>

#include <algorithm>

#include "dpseq/search.hpp"

using namespace dpseq;

namespace {

std::vector<int> parse_set(const FiniteGroup& g, std::initializer_list<const char*> labels) {
  std::vector<int> s;
  for (const char* l : labels) s.push_back(g.parse(l));
  return s;
}

std::vector<int> all_but_identity(const FiniteGroup& g) {
  std::vector<int> s;
  for (int a = 1; a < g.order(); ++a) s.push_back(a);
  return s;
}

}  // namespace

TEST(Search, KnownNonSequenceableSets) {
  const auto d6 = FiniteGroup::dihedral(3);
  auto r = find_s_sequencing(d6, parse_set(d6, {"u", "u^2", "v", "u^2*v"}));
  EXPECT_EQ(r.status, SearchStatus::NotFound);

  const auto q8 = quaternion_group();
  std::vector<int> s;
  for (int a = 1; a < 8; ++a)
    if (a != q8.parse("-1")) s.push_back(a);
  EXPECT_EQ(find_s_sequencing(q8, s).status, SearchStatus::NotFound);

  const auto d8 = FiniteGroup::dihedral(4);
  EXPECT_EQ(find_s_sequencing(d8, parse_set(d8, {"u^2", "v", "u*v", "u^2*v", "u^3*v"})).status, SearchStatus::NotFound);

  const auto sl = special_linear_2_3();
  EXPECT_EQ(find_s_sequencing(sl, parse_set(sl, {"M0121", "M1120", "M2022", "M2102"})).status, SearchStatus::NotFound);
}

TEST(Search, FoundSequencesVerify) {
  const auto d10 = FiniteGroup::dihedral(5);
  long long found = 0, vacuous = 0;
  for_each_subset(d10, 1, 9, [&](const std::vector<int>& s) {
    auto r = find_s_sequencing(d10, s);
    if (!has_non_identity_product_ordering(d10, s)) {
      // {u, u^4}, {u^2, u^3} and {u, u^2, u^3, u^4}: the last product is always e
      ASSERT_EQ(r.status, SearchStatus::NotFound);
      ++vacuous;
      return;
    }
    ASSERT_EQ(r.status, SearchStatus::Found);
    ASSERT_TRUE(is_s_sequencing(d10, *r.sequence));
    auto sorted = r.sequence->elements;
    std::sort(sorted.begin(), sorted.end());
    ASSERT_EQ(sorted, s);
    ++found;
  });
  EXPECT_EQ(found, 508);
  EXPECT_EQ(vacuous, 3);
}

TEST(Search, FirstLexicographicIsLeast) {
  const auto d8 = FiniteGroup::dihedral(4);
  const auto s = parse_set(d8, {"u", "u^2", "v", "u*v"});
  auto r = find_s_sequencing(d8, s, SearchMode::SSequencing, Objective::FirstLexicographic);
  ASSERT_EQ(r.status, SearchStatus::Found);
  std::vector<int> p = s;
  std::sort(p.begin(), p.end());
  do {
    if (is_s_sequencing(d8, ElementSequence{p})) break;
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_EQ(r.sequence->elements, p);
}

TEST(Search, CountMatchesBruteForce) {
  const auto d8 = FiniteGroup::dihedral(4);
  const auto s = parse_set(d8, {"u", "u^3", "v", "u*v", "u^2*v"});
  auto r = find_s_sequencing(d8, s, SearchMode::SSequencing, Objective::CountAll);
  std::vector<int> p = s;
  std::sort(p.begin(), p.end());
  long long n = 0;
  do n += is_s_sequencing(d8, ElementSequence{p});
  while (std::next_permutation(p.begin(), p.end()));
  EXPECT_EQ(r.count, n);
}

TEST(Search, ThreadCountDoesNotChangeResults) {
  const auto q8 = quaternion_group();
  const auto s = all_but_identity(q8);
  for (int t : {1, 2, 3}) {
    SearchRequest req;
    req.group = &q8;
    req.subset = s;
    req.threads = t;
    req.objective = Objective::FirstLexicographic;
    EXPECT_EQ(find_s_sequencing(req).status, SearchStatus::NotFound);
    req.subset.pop_back();
    auto r = find_s_sequencing(req);
    SearchRequest one = req;
    one.threads = 1;
    auto r1 = find_s_sequencing(one);
    EXPECT_EQ(r.status, r1.status);
    EXPECT_EQ(r.sequence, r1.sequence);
  }
}

TEST(Search, BudgetGivesInconclusive) {
  const auto d14 = FiniteGroup::dihedral(7);
  SearchRequest req;
  req.group = &d14;
  req.subset = all_but_identity(d14);
  req.node_budget = 10;
  EXPECT_EQ(find_s_sequencing(req).status, SearchStatus::Inconclusive);
}

TEST(Patterns, DihedralSixIsFirstPattern) {
  const auto d6 = FiniteGroup::dihedral(3);
  auto p = detect_exception_pattern(d6, parse_set(d6, {"u", "u^2", "v", "u^2*v"}));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->id, PatternId::P1);
  std::map<std::string, int> w(p->witness.begin(), p->witness.end());
  const int x = w["x"], xi = w["x^-1"], y = w["y"], z = w["z"];
  EXPECT_EQ(d6.inv(x), xi);
  EXPECT_EQ(d6.mul(d6.mul(x, y), z), 0);
  EXPECT_EQ(d6.mul(d6.mul(xi, z), y), 0);
  // the assignment x=u, y=u^2 v, z=v satisfies both relations as well
  const int u = d6.parse("u"), u2v = d6.parse("u^2*v"), v = d6.parse("v");
  EXPECT_EQ(d6.mul(d6.mul(u, u2v), v), 0);
  EXPECT_EQ(d6.mul(d6.mul(d6.inv(u), v), u2v), 0);
}

TEST(Patterns, SpecialLinearSetIsSecondPattern) {
  const auto sl = special_linear_2_3();
  auto p = detect_exception_pattern(sl, parse_set(sl, {"M0121", "M1120", "M2022", "M2102"}));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->id, PatternId::P2);
}

TEST(Patterns, MatchDoesNotForbidSequencing) {
  const auto d10 = FiniteGroup::dihedral(5);
  const auto s = parse_set(d10, {"u", "u^4", "v", "u*v"});
  auto p = detect_exception_pattern(d10, s);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->id, PatternId::P1);
  // (v, u, uv, u^4) has partial products e, v, u^4 v, u^3, u^2
  const ElementSequence w{parse_set(d10, {"v", "u", "u*v", "u^4"})};
  EXPECT_TRUE(is_s_sequencing(d10, w));
  EXPECT_EQ(find_s_sequencing(d10, s).status, SearchStatus::Found);
  EXPECT_THROW(detect_exception_pattern(d10, {1, 2, 3}), InvalidParameter);
}

TEST(SmallK, ClassificationHoldsOnSmallGroups) {
  for (const char* name : {"D6", "D8", "Q8", "Z6", "A4"}) {
    const auto g = make_group(name);
    const auto rep = classify_small_k(g);
    EXPECT_TRUE(rep.ok()) << name;
  }
  const auto d6 = classify_small_k(make_group("D6"));
  EXPECT_FALSE(d6.exceptions.empty());
  for (const auto& [s, p] : d6.exceptions) EXPECT_EQ(p.id, PatternId::P1);
  EXPECT_TRUE(classify_small_k(quaternion_group()).exceptions.empty());
}

TEST(SmallK, SpecialLinearOnlySecondPattern) {
  const auto rep = classify_small_k(special_linear_2_3());
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(rep.exceptions.empty());
  for (const auto& [s, p] : rep.exceptions) {
    EXPECT_EQ(p.id, PatternId::P2);
    EXPECT_EQ(s.size(), 4u);
  }
}

TEST(Strong, SmallVerdicts) {
  EXPECT_TRUE(strong_sequenceability_scan(FiniteGroup::dihedral(5)).strongly_sequenceable());
  const auto d6 = strong_sequenceability_scan(FiniteGroup::dihedral(3));
  EXPECT_FALSE(d6.strongly_sequenceable());
  EXPECT_NE(std::find(d6.failures.begin(), d6.failures.end(), std::vector<int>{1, 2, 3, 4, 5}), d6.failures.end());
  EXPECT_FALSE(strong_sequenceability_scan(quaternion_group()).strongly_sequenceable());
  EXPECT_EQ(strong_sequenceability_scan(FiniteGroup::dihedral(7)).status, SearchStatus::Inconclusive);
}

TEST(RotationalSequencing, Dihedral) {
  auto d8 = find_rotational_sequencing(FiniteGroup::dihedral(4));
  ASSERT_EQ(d8.status, SearchStatus::Found);
  EXPECT_TRUE(is_rotational_s_sequencing(FiniteGroup::dihedral(4), *d8.sequence));
  EXPECT_EQ(find_rotational_sequencing(FiniteGroup::dihedral(3)).status, SearchStatus::NotFound);
  EXPECT_EQ(find_rotational_sequencing(FiniteGroup::dihedral(5)).status, SearchStatus::NotFound);
  for (int m = 8; m <= 200; m += 2) {
    const auto g = FiniteGroup::dihedral(m);
    auto r = find_rotational_sequencing(g);
    ASSERT_EQ(r.status, SearchStatus::Found) << m;
    ASSERT_EQ(static_cast<int>(r.sequence->size()), g.order() - 1);
    ASSERT_TRUE(is_rotational_s_sequencing(g, *r.sequence)) << m;
  }
}

TEST(RotationalSequencing, NoneForDihedralSixOrQuaternion) {
  for (const auto& g : {FiniteGroup::dihedral(3), quaternion_group()}) {
    auto s = all_but_identity(g);
    EXPECT_EQ(find_s_sequencing(g, s, SearchMode::Either).status, SearchStatus::NotFound) << g.name();
  }
}
