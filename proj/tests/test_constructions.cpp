#include <gtest/gtest.h>

#include <map>

#include "support.hpp"
#include "toric/constructions.hpp"

using namespace toric;
using namespace toric::test;

namespace {

using Weights = std::vector<std::vector<long>>;

Fan square_cone_fan() { return Fan(3, {cone(3, {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}})}); }

Fan blowup_fan() { return Fan(2, {cone(2, {{1, 0}, {1, 1}}), cone(2, {{1, 1}, {0, 1}})}); }

// Weight attached to each ray, independent of the coordinate order.
std::map<std::vector<long>, long> weight_by_ray(const CanonicalStack& c) {
  auto g = gbeta(c.sf).g1;
  std::map<std::vector<long>, long> out;
  for (std::size_t i = 0; i < c.rays.size(); ++i) out[to_longs(c.rays[i])] = g.weight(i)[0].get_si();
  return out;
}

Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

TEST(Fantastack, A1Cone) {
  auto f = fantastack(Fan(2, {cone(2, {{1, 0}, {1, 2}})}), vecs({{1, 0}, {1, 2}}));
  EXPECT_EQ(f.presentation.notation(), "[A^2/(1,1) mu_2]");
  EXPECT_EQ(f.sf.fan, affine_fan(2));
}

TEST(Fantastack, A1ConeDoubledRay) {
  auto f = fantastack(Fan(2, {cone(2, {{1, 0}, {1, 2}})}), vecs({{2, 0}, {1, 2}}));
  EXPECT_EQ(f.presentation.notation(), "[A^2/(1,2) mu_4]");
}

TEST(Fantastack, Blowup) {
  auto f = fantastack(blowup_fan(), vecs({{1, 0}, {1, 1}, {0, 1}}));
  EXPECT_EQ(f.presentation.removed_locus, (std::vector<IndexSet>{{1, 3}}));
  EXPECT_EQ(f.presentation.notation(), "[(A^3\\V(x1,x3))/(1,-1,1) G_m]");
}

TEST(Fantastack, SquareCone) {
  auto f = fantastack(square_cone_fan(), vecs({{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}}));
  EXPECT_EQ(f.presentation.notation(), "[A^4/(1,-1,1,-1) G_m]");
}

TEST(Fantastack, Preconditions) {
  Fan a1(2, {cone(2, {{1, 0}, {1, 2}})});
  EXPECT_THROW(fantastack(a1, vecs({{1, 0}})), FantastackPreconditionViolated);
  EXPECT_THROW(fantastack(a1, vecs({{1, 0}, {1, 1}})), FantastackPreconditionViolated);
  EXPECT_THROW(fantastack(a1, vecs({{1, 0}, {1, 2}, {-1, 0}})), FantastackPreconditionViolated);
}

TEST(CanonicalStack, A1Resolution) {
  auto c = canonical_stack(StackyFan::toric_variety(Fan(2, {cone(2, {{1, 0}, {1, 2}})})));
  auto g = gbeta(c.sf).g1;
  EXPECT_EQ(g.character_group, FgAbGroup(0, {Integer(2)}));
  EXPECT_EQ(weight_list(g), (Weights{{1}, {1}}));
  EXPECT_TRUE(validate_morphism(c.morphism).valid);
  EXPECT_TRUE(gms_check(c.morphism).verdict);
}

TEST(CanonicalStack, SmoothBaseIsIsomorphism) {
  auto c = canonical_stack(StackyFan::toric_variety(p1_fan()));
  EXPECT_TRUE(is_isomorphism(c.morphism).isomorphism);
}

TEST(CanonicalStack, SquareCone) {
  auto c = canonical_stack(StackyFan::toric_variety(square_cone_fan()));
  EXPECT_EQ(gbeta(c.sf).g1.character_group, FgAbGroup::free(1));
  std::map<std::vector<long>, long> expect{{{0, 0, 1}, 1}, {{1, 0, 1}, -1}, {{1, 1, 1}, 1}, {{0, 1, 1}, -1}};
  EXPECT_EQ(weight_by_ray(c), expect);
  EXPECT_TRUE(c.sf.fan.is_smooth());
}

TEST(CoxPresentation, ProjectivePlane) {
  auto c = cox_presentation(p2_fan());
  ASSERT_EQ(c.rays.size(), 3u);
  // The weights span the functionals vanishing on both rows of beta.
  IntMatrix b = c.sf.free_matrix();
  Vec n = cross(b.row(0), b.row(1));
  Vec p = primitive(n);
  if (p[0] < 0)
    for (auto& x : p) x = -x;
  EXPECT_EQ(p, v({1, 1, 1}));
  auto g = gbeta(c.sf).g1;
  EXPECT_EQ(g.character_group, FgAbGroup::free(1));
  EXPECT_EQ(weight_list(g), (Weights{{1}, {1}, {1}}));
}

TEST(CoxPresentation, ProjectiveLineAndAffineLine) {
  auto p1 = cox_presentation(p1_fan());
  EXPECT_EQ(weight_list(gbeta(p1.sf).g1), (Weights{{1}, {1}}));
  auto a1 = cox_presentation(affine_fan(1));
  EXPECT_TRUE(gbeta(a1.sf).g1.character_group.is_trivial());
}

TEST(IsIsomorphism, Examples) {
  StackyMorphism cox{p1_quotient_datum(), StackyFan::toric_variety(p1_fan()), IntMatrix{{1, -1}},
                     FgAbHom::identity(FgAbGroup::free(1))};
  EXPECT_TRUE(is_isomorphism(cox).isomorphism);

  StackyMorphism id{a1_datum(), a1_datum(), IntMatrix::identity(2), FgAbHom::identity(FgAbGroup::free(2))};
  EXPECT_TRUE(is_isomorphism(id).isomorphism);

  StackyMorphism fold{stacky(affine_fan(2), FgAbGroup::free(1), {{1}, {1}}), StackyFan::toric_variety(affine_fan(1)),
                      IntMatrix{{1, 1}}, FgAbHom::identity(FgAbGroup::free(1))};
  ASSERT_TRUE(validate_morphism(fold).valid);
  auto r = is_isomorphism(fold);
  EXPECT_FALSE(r.isomorphism);
  EXPECT_EQ(r.failing_condition, 3);
}

TEST(IsIsomorphism, GroupMismatchFailsFirstCondition) {
  StackyMorphism m{stacky(affine_fan(1), FgAbGroup::free(1), {{2}}), StackyFan::toric_variety(affine_fan(1)),
                   IntMatrix{{2}}, FgAbHom::from_images(FgAbGroup::free(1), FgAbGroup::free(1), vecs({{1}}))};
  ASSERT_TRUE(validate_morphism(m).valid);
  EXPECT_EQ(is_isomorphism(m).failing_condition, 3);
  StackyMorphism d{StackyFan::toric_variety(affine_fan(1)), stacky(affine_fan(1), FgAbGroup::free(1), {{2}}),
                   IntMatrix{{1}}, FgAbHom::from_images(FgAbGroup::free(1), FgAbGroup::free(1), vecs({{2}}))};
  ASSERT_TRUE(validate_morphism(d).valid);
  EXPECT_EQ(is_isomorphism(d).failing_condition, 1);
}

TEST(GmsCheck, QuotientOfLineByMu2) {
  StackyMorphism m{stacky(affine_fan(1), FgAbGroup::free(1), {{2}}), StackyFan::toric_variety(affine_fan(1)),
                   IntMatrix{{2}}, FgAbHom::identity(FgAbGroup::free(1))};
  auto r = gms_check(m);
  EXPECT_TRUE(r.verdict);
  ASSERT_TRUE(r.tau);
  EXPECT_TRUE(r.tau->is_zero());
}

TEST(GmsCheck, PlaneByOppositeWeights) {
  StackyFan src = stacky(affine_fan(2), FgAbGroup::free(1), {{1}, {-1}});
  StackyMorphism m{src, StackyFan::toric_variety(Fan::trivial(0)), IntMatrix(0, 2),
                   FgAbHom(FgAbGroup::free(1), FgAbGroup::free(0), IntMatrix(0, 1))};
  auto r = gms_check(m);
  EXPECT_TRUE(r.verdict);
  ASSERT_TRUE(r.tau);
  EXPECT_EQ(*r.tau, cone(2, {{1, 0}, {0, 1}}));
}

TEST(GmsCheck, ProjectiveLineModGm) {
  StackyFan src(p1_fan(), FgAbGroup::free(0), vecs({{}}));
  StackyMorphism m{src, StackyFan::toric_variety(Fan::trivial(0)), IntMatrix(0, 1),
                   FgAbHom::identity(FgAbGroup::free(0))};
  auto r = gms_check(m);
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(condition_label(r.failing_condition), "1");

  StackyFan punctured(punctured_affine_fan(2), FgAbGroup::free(0), vecs({{}, {}}));
  StackyMorphism m2{punctured, StackyFan::toric_variety(Fan::trivial(0)), IntMatrix(0, 2),
                    FgAbHom::identity(FgAbGroup::free(0))};
  auto r2 = gms_check(m2);
  EXPECT_FALSE(r2.verdict);
  EXPECT_EQ(condition_label(r2.failing_condition), "1");
}

TEST(GmsConstruct, FantastackOfA1) {
  Fan sigma(2, {cone(2, {{1, 0}, {1, 2}})});
  auto f = fantastack(sigma, vecs({{1, 0}, {1, 2}}));
  auto r = gms_construct(f.sf);
  ASSERT_TRUE(r.verdict);
  EXPECT_EQ(*r.gms_fan, sigma);
  EXPECT_TRUE(gms_check(*r.morphism).verdict);
}

TEST(GmsConstruct, InteriorImageAddsNoCones) {
  // beta(e_1) = (1,1,1) lies inside the octant. The cone spanned by the images of e_1, e_2, e_4
  // is hit by points of the big cone outside that face, e.g. x = (0,3,1,3) with image (3,3,3).
  Fan octant = affine_fan(3);
  auto images = vecs({{1, 1, 1}, {0, 0, 1}, {3, 0, 0}, {0, 1, 0}});
  auto f = fantastack(octant, images);
  IntMatrix b = IntMatrix::from_columns(images, 3);
  Vec x = v({0, 3, 1, 3});
  ASSERT_EQ(b * x, v({3, 3, 3}));
  ASSERT_TRUE(cone_contains(cone(3, {{1, 1, 1}, {0, 0, 1}, {0, 1, 0}}), b * x));
  ASSERT_FALSE(cone_contains(cone(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}), x));
  auto r = gms_construct(f.sf);
  ASSERT_TRUE(r.verdict);
  EXPECT_EQ(*r.gms_fan, octant);
}

TEST(GmsConstruct, NonSeparatedLine) {
  auto r = gms_construct(nonseparated_line());
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(condition_label(r.failing_condition), "ii");
}

TEST(GmsConstruct, ProjectiveLineModGm) {
  StackyFan src(punctured_affine_fan(2), FgAbGroup::free(0), vecs({{}, {}}));
  auto r = gms_construct(src);
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(condition_label(r.failing_condition), "i");
  StackyFan p1(p1_fan(), FgAbGroup::free(0), vecs({{}}));
  EXPECT_EQ(condition_label(gms_construct(p1).failing_condition), "i");
}

TEST(GmsConstruct, ToricVarietyIsItsOwn) {
  auto r = gms_construct(StackyFan::toric_variety(p2_fan()));
  ASSERT_TRUE(r.verdict);
  EXPECT_EQ(*r.gms_fan, p2_fan());
  EXPECT_EQ(r.morphism->Phi, IntMatrix::identity(2));
}

TEST(ModuliDescription, ProjectivePlane) {
  auto f = fantastack(p2_fan(), vecs({{1, 0}, {0, 1}, {-1, -1}}));
  auto m = moduli_description(f.sf);
  EXPECT_EQ(m.n, 3u);
  EXPECT_EQ(m.linear_relations, vecs({{1, 0, -1}, {0, 1, -1}}));
  EXPECT_EQ(m.intersection_relations, (std::vector<IndexSet>{{1, 2, 3}}));
}

TEST(ModuliDescription, A1) {
  auto m = moduli_description(a1_datum());
  EXPECT_EQ(m.linear_relations, vecs({{1, 1}, {0, 2}}));
  EXPECT_TRUE(m.intersection_relations.empty());
}

TEST(ModuliDescription, TwoDivisorsSummingToZero) {
  auto m = moduli_description(stacky(affine_fan(2), FgAbGroup::free(1), {{1}, {1}}));
  EXPECT_EQ(m.linear_relations, vecs({{1, 1}}));
  EXPECT_TRUE(m.intersection_relations.empty());
}

TEST(ModuliDescription, RelationsCutOutTheCharacterGroup) {
  auto f = fantastack(blowup_fan(), vecs({{1, 0}, {1, 1}, {0, 1}}));
  auto m = moduli_description(f.sf, {2});
  EXPECT_EQ(m.forced_zero_sections, (IndexSet{2}));
  auto c = cokernel_presentation(IntMatrix::from_rows(m.linear_relations, m.n).transpose());
  EXPECT_EQ(c.group, gbeta(f.sf).g1.character_group);
  EXPECT_EQ(c.projection, gbeta(f.sf).g1.weights);
}

TEST(ModuliDescription, Preconditions) {
  EXPECT_THROW(moduli_description(StackyFan::toric_variety(Fan(2, {cone(2, {{1, 0}, {1, 2}})}))), NotSmooth);
  EXPECT_THROW(moduli_description(m11_datum()), PreconditionViolated);
  EXPECT_THROW(moduli_description(StackyFan::toric_variety(p1_fan())), NotSubfanOfAffineSpace);
}

TEST(Gerbe, EmptyZeroSet) {
  auto g = gerbe_decomposition(a1_datum(), {});
  EXPECT_EQ(g.base, a1_datum());
  EXPECT_TRUE(g.roots.empty());
  EXPECT_EQ(g.bg_m_rank, 0u);
}

TEST(Gerbe, ClassifyingStackOfMu2) {
  auto g = gerbe_decomposition(stacky(affine_fan(1), FgAbGroup::free(1), {{2}}), {1});
  ASSERT_EQ(g.roots.size(), 1u);
  EXPECT_EQ(g.roots[0].b, 2);
  EXPECT_TRUE(g.roots[0].exponent.empty());
  EXPECT_EQ(g.base.lattice_rank(), 0u);
  EXPECT_TRUE(g.base_coordinates.empty());
}

TEST(Gerbe, WeightedProjectiveDivisor) {
  // Rows of beta span N^*; b is the least positive third coordinate of an element of N^*.
  auto sf = reduce_nonstrict(m11_datum()).strict_sf;
  IntMatrix b = sf.free_matrix();
  long best = 0;
  std::vector<long> a;
  for (long c1 = -6; c1 <= 6; ++c1)
    for (long c2 = -6; c2 <= 6; ++c2) {
      Vec x = b.transpose() * v({c1, c2});
      long third = x[2].get_si();
      if (third > 0 && (best == 0 || third < best || (third == best && c1 == 0))) {
        best = third;
        a = {x[0].get_si(), x[1].get_si()};
      }
    }
  ASSERT_EQ(best, 2);
  ASSERT_EQ(a, (std::vector<long>{1, 0}));
  auto g = gerbe_decomposition(sf, {3});
  ASSERT_EQ(g.roots.size(), 1u);
  EXPECT_EQ(g.roots[0].coordinate, 3u);
  EXPECT_EQ(g.roots[0].b, best);
  EXPECT_EQ(g.roots[0].exponent, v({-a[0], -a[1]}));
  EXPECT_EQ(g.base_coordinates, (IndexSet{1, 2}));
  EXPECT_EQ(weight_list(gbeta(g.base).g1), (Weights{{3}, {2}}));
}
