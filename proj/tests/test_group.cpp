#include <gtest/gtest.h>

#include <set>

#include "dpseq/group.hpp"

using namespace dpseq;

TEST(Dihedral, Relations) {
  const auto g = FiniteGroup::dihedral(5);
  EXPECT_EQ(g.order(), 10);
  EXPECT_EQ(g.mul(g.parse("u^2"), g.parse("u^3")), g.identity());
  EXPECT_EQ(g.mul(g.parse("v"), g.parse("u")), g.parse("u^4*v"));
  EXPECT_EQ(g.mul(g.parse("u^2*v"), g.parse("u^3*v")), g.parse("u^4"));
  EXPECT_THROW(FiniteGroup::dihedral(1), InvalidParameter);
}

TEST(Dihedral, Orders) {
  const auto g = FiniteGroup::dihedral(5);
  EXPECT_EQ(g.element_order(g.identity()), 1);
  EXPECT_EQ(g.element_order(g.parse("u")), 5);
  EXPECT_EQ(g.element_order(g.parse("v")), 2);
  const Element u(g, g.parse("u"));
  EXPECT_EQ(order(u), 5);
  EXPECT_EQ(mul(u, inv(u)).index(), g.identity());
}

TEST(Dihedral, Cosets) {
  const auto g = FiniteGroup::dihedral(5);
  EXPECT_EQ(g.coset_of(g.parse("u^3")), Coset::Rotation);
  EXPECT_EQ(g.coset_of(g.parse("v")), Coset::Reflection);
  int rot = 0, ref = 0;
  for (int a = 1; a < g.order(); ++a) (g.coset_of(a) == Coset::Rotation ? rot : ref)++;
  EXPECT_EQ(rot, 4);
  EXPECT_EQ(ref, 5);
}

TEST(Dihedral, LabelsRoundTrip) {
  const auto g = FiniteGroup::dihedral(7);
  for (int a = 0; a < g.order(); ++a) EXPECT_EQ(g.parse(g.label(a)), a);
  EXPECT_EQ(g.label(g.parse("u^3*v")), "u^3*v");
  EXPECT_EQ(g.label(g.rotation(1)), "u");
  EXPECT_EQ(g.label(g.reflection(0)), "v");
  EXPECT_EQ(g.label(0), "e");
  EXPECT_THROW(g.parse("u^9"), InvalidParameter);
  EXPECT_THROW(g.parse("w"), InvalidParameter);
}

TEST(Dihedral, ClosedFormMatchesPresentationTable) {
  for (int m = 2; m <= 12; ++m) {
    const auto g = FiniteGroup::dihedral(m);
    // words u^a v^b multiplied by rewriting v u^c = u^{-c} v
    for (int a1 = 0; a1 < m; ++a1)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int a2 = 0; a2 < m; ++a2)
          for (int b2 = 0; b2 < 2; ++b2) {
            const int rot = ((a1 + (b1 ? -a2 : a2)) % m + m) % m;
            const int refl = b1 ^ b2;
            ASSERT_EQ(g.mul(a1 + b1 * m, a2 + b2 * m), rot + refl * m) << "m=" << m;
          }
  }
}

TEST(Catalog, InversesEverywhere) {
  for (const auto& e : catalog_entries(24)) {
    const auto g = make_group(e.name);
    for (int a = 0; a < g.order(); ++a) ASSERT_EQ(g.mul(a, g.inv(a)), g.identity()) << e.name;
  }
}

TEST(Catalog, QuaternionHasOneInvolution) {
  const auto q = quaternion_group();
  int inv = 0;
  for (int a = 0; a < q.order(); ++a) inv += q.element_order(a) == 2;
  EXPECT_EQ(inv, 1);
  EXPECT_EQ(q.element_order(q.parse("-1")), 2);
}

TEST(Catalog, SpecialLinearGroupOrder) {
  const auto g = special_linear_2_3();
  EXPECT_EQ(g.order(), 24);
  EXPECT_NO_THROW(g.parse("M0121"));
  EXPECT_EQ(make_group("SL(2,3)").order(), 24);
  EXPECT_EQ(alternating_group_4().order(), 12);
}

TEST(Ingest, AcceptsTrivialAndCyclic) {
  EXPECT_EQ(ingest_group_table("1\n0\n").order(), 1);
  const auto z3 = ingest_group_table("3\n0 1 2\n1 2 0\n2 0 1\n");
  EXPECT_EQ(z3.order(), 3);
  EXPECT_EQ(z3.mul(1, 2), 0);
  EXPECT_EQ(z3.element_order(1), 3);
}

TEST(Ingest, RejectsNonGroups) {
  try {
    ingest_group_table("3\n0 1 2\n1 1 0\n2 0 1\n");
    FAIL() << "accepted a repeated row entry";
  } catch (const IngestionError& e) {
    EXPECT_NE(std::string(e.what()).find("Latin"), std::string::npos);
  }
  EXPECT_THROW(ingest_group_table("2\n1 0\n0 1\n"), IngestionError);  // no identity at 0
  EXPECT_THROW(ingest_group_table("2\n0 1\n1\n"), IngestionError);
  EXPECT_THROW(ingest_group_table("2\n0 1\n1 0\n7"), IngestionError);
  // a Latin square that is not associative (order 5 loop)
  EXPECT_THROW(ingest_group_table("5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n"), IngestionError);
}

TEST(Automorphisms, OrderClasses) {
  const auto d10 = FiniteGroup::dihedral(5);
  auto c = automorphism_order_classes(d10);
  EXPECT_EQ(c[5].size(), 4u);
  EXPECT_EQ(c[2].size(), 5u);
  const auto d18 = FiniteGroup::dihedral(9);
  auto c18 = automorphism_order_classes(d18);
  EXPECT_EQ(c18[3].size(), 2u);
  EXPECT_EQ(c18[9].size(), 6u);
  EXPECT_EQ(automorphism_order_classes(quaternion_group())[2].size(), 1u);
}

TEST(Automorphisms, OddDihedralSameOrderMeansConjugateUnderAut) {
  for (int m : {5, 9, 15, 21}) {
    const auto g = FiniteGroup::dihedral(m);
    for (int a = 1; a < g.order(); ++a)
      for (int b = 1; b < g.order(); ++b) {
        auto f = dihedral_automorphism_between(g, a, b);
        ASSERT_EQ(f.has_value(), g.element_order(a) == g.element_order(b)) << m << " " << a << " " << b;
        if (f) {
          ASSERT_EQ(f->apply(g, a), b);
        }
      }
  }
}

TEST(Element, MixedGroupsRejected) {
  const auto a = FiniteGroup::dihedral(5);
  const auto b = FiniteGroup::dihedral(7);
  EXPECT_THROW(Element(a, 1) * Element(b, 1), InvalidParameter);
}
