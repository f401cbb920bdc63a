#include <gtest/gtest.h>

#include "flatfib/calabi.hpp"
#include "flatfib/catalog.hpp"
#include "flatfib/classify.hpp"
#include "support.hpp"

using namespace flatfib;
using namespace flatfib::testing;

namespace {

const Isometry t1 = Isometry::translation(Vec{1, 0});
const Isometry t2 = Isometry::translation(Vec{0, 1});

bool same_subgroup(const SubgroupDesignation& a, const SubgroupDesignation& b) {
  for (const auto& x : a.generators())
    if (!b.contains(x)) return false;
  for (const auto& x : b.generators())
    if (!a.contains(x)) return false;
  return true;
}

}  // namespace

TEST(Calabi, RejectsIncompleteSubgroup) {
  const SpaceGroup& pgg = entry(8).group;
  EXPECT_THROW(CalabiDecomposition(SubgroupDesignation(pgg, {t1.pow(2)})), rejected_input);
  EXPECT_THROW(CalabiDecomposition(SubgroupDesignation(pgg, {entry(8).group.generators().back()})), rejected_input);
}

TEST(Calabi, KernelOfActionForPgg) {
  const CalabiDecomposition d = entry(8).decomposition();
  EXPECT_TRUE(same_subgroup(d.k_sub(), SubgroupDesignation(d.gamma(), {t2})));
  EXPECT_EQ(d.v(), Subspace::span(2, {Vec{1, 0}}));
  EXPECT_EQ(d.v_perp(), Subspace::span(2, {Vec{0, 1}}));
}

TEST(Calabi, NkMembership) {
  const CalabiDecomposition d = entry(8).decomposition();
  EXPECT_TRUE(nk_member(d, t1 * t2));
  EXPECT_FALSE(nk_member(d, Isometry::linear(Mat{{-1, 0}, {0, -1}})));
  EXPECT_THROW(nk_member(d, Isometry::translation(Vec{Rat(1, 2), 0})), rejected_input);
}

TEST(StructureGroup, CatalogOrdersAndTypes) {
  const std::vector<std::size_t> orders{1, 2, 1, 2, 2, 1, 2, 4, 2};
  const std::vector<std::string> types{"C1", "C2", "C1", "C2", "C2", "C1", "C2", "D2", "C2"};
  for (int it = 1; it <= 9; ++it) {
    const CalabiDecomposition d = entry(it).decomposition();
    const StructureGroup s = structure_group(d);
    ASSERT_TRUE(s.finite()) << "IT " << it;
    EXPECT_EQ(*s.order, orders[it - 1]) << "IT " << it;
    EXPECT_EQ(structure_group_order(d), s.order) << "IT " << it;
    EXPECT_EQ(s.iso_type(), types[it - 1]) << "IT " << it;
    EXPECT_EQ(s.elements.size(), *s.order);
    EXPECT_TRUE(is_effective(s)) << "IT " << it;
    // Representatives are pairwise incongruent modulo NK.
    for (std::size_t i = 0; i < s.elements.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        EXPECT_FALSE(nk_member(d, s.elements[i] * s.elements[j].inverse())) << "IT " << it;
  }
}

TEST(StructureGroup, PgIsCyclicOfOrderTwo) {
  const StructureGroup s = structure_group(entry(4).decomposition());
  EXPECT_EQ(s.kind, StructureKind::Cyclic);
  ASSERT_EQ(s.action_table.size(), 1u);
  EXPECT_EQ(s.action_table[0], (ActionPair{ActionClass::two_rot(), ActionClass::ref()}));
}

TEST(StructureGroup, PillowOrdersAndRotations) {
  for (const Rat v : {Rat(0), Rat(1, 2), Rat(1, 3), Rat(2, 5), Rat(3, 7), Rat(5, 8)}) {
    const PillowFamily p = pillow(v);
    const CalabiDecomposition d(p.n);
    const StructureGroup s = structure_group(d);
    ASSERT_TRUE(s.finite());
    EXPECT_EQ(static_cast<Rat::int_type>(*s.order), 2 * v.den()) << v.to_string();
    EXPECT_EQ(order_mod_nk(d, p.group.generators()[1], 100), std::optional<std::size_t>(v.den())) << v.to_string();
    EXPECT_TRUE(is_effective(s));
    if (v.den() > 2) {
      // t2 acts on the fiber by a rotation of order b.
      const auto chart = FiberChart::of(d.n_sub().generators(), d.v());
      ASSERT_TRUE(chart.has_value());
      EXPECT_EQ(chart->circle_action(p.group.generators()[1]).order(), v.den());
    }
  }
}

TEST(StructureGroup, EffectiveOnRandomConjugates) {
  Random r(7);
  for (int i = 0; i < 40; ++i) {
    const Instance inst = random_instance(r);
    const CalabiDecomposition d(SubgroupDesignation(inst.group, inst.n));
    const StructureGroup s = structure_group(d);
    EXPECT_TRUE(is_effective(s)) << inst.desc;
  }
}

TEST(Splitting, CatalogFlags) {
  const std::vector<bool> want{true, true, true, false, false, true, true, false, true};
  for (int it = 1; it <= 9; ++it) EXPECT_EQ(splits(entry(it).decomposition()), want[it - 1]) << "IT " << it;
}

TEST(Splitting, CosetInvolution) {
  const auto n = entry(8).subgroup();
  EXPECT_FALSE(coset_has_involution(n, entry(8).group.generators().back()));
  EXPECT_TRUE(coset_has_involution(n, Isometry::linear(Mat{{-1, 0}, {0, -1}})));
}

TEST(CoxeterLifts, ActAsReflectionsOnBase) {
  for (int it : {2, 3, 4, 5, 6, 7, 8, 9}) {
    const CalabiDecomposition d = entry(it).decomposition();
    const auto [g1, g2] = coxeter_lifts(d);
    EXPECT_TRUE(d.gamma().contains(g1));
    EXPECT_TRUE(d.gamma().contains(g2));
    EXPECT_EQ(line_action(g1, d.v_perp()).sign, -1) << "IT " << it;
    EXPECT_EQ(line_action(g2, d.v_perp()).sign, -1) << "IT " << it;
  }
  EXPECT_THROW(coxeter_lifts(entry(1).decomposition()), std::invalid_argument);
}

TEST(CyclicLift, GeneratesTheQuotient) {
  const CalabiDecomposition d = entry(1).decomposition();
  const Isometry g = cyclic_lift(d);
  const LineMap m = line_action(g, d.v_perp());
  EXPECT_EQ(m.sign, 1);
  EXPECT_EQ(m.shift.abs(), Rat(1));
}

TEST(FibrationReport, DualsAndKinds) {
  const FibrationReport r = fibration_report(entry(3).decomposition());
  EXPECT_EQ(r.type(), "(-)");
  EXPECT_TRUE(r.dual_exists);
  EXPECT_EQ(r.dual_type(), "[·]");
  EXPECT_EQ(fibration_type(OneOrbifoldKind::Interval, OneOrbifoldKind::Interval), "[-]");
}

TEST(FibrationReport, OrthogonalDualSwapsRoles) {
  for (int it = 1; it <= 9; ++it) {
    const CalabiDecomposition d = entry(it).decomposition();
    const auto dual = orthogonal_dual(d);
    ASSERT_TRUE(dual.has_value()) << "IT " << it;
    const CalabiDecomposition dd(*dual);
    EXPECT_TRUE(same_subgroup(dd.k_sub(), d.n_sub())) << "IT " << it;
    EXPECT_EQ(structure_group(dd).order, structure_group(d).order) << "IT " << it;
  }
}
