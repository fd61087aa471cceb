#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "property_suites.hpp"
#include "support.hpp"

using namespace toric;
using namespace toric::test;

namespace {

constexpr int kCases = 500;

void expect_clean(const SuiteResult& r) {
  EXPECT_EQ(r.cases, kCases);
  EXPECT_EQ(r.failures, 0) << r.first_failure;
}

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Random fan on Z^2: random primitive rays sorted by angle, with some of the cones between
// angular neighbours.
Fan random_fan_2d(std::mt19937_64& rng) {
  while (true) {
    std::set<std::pair<double, Vec>> by_angle;
    int k = uniform(rng, 2, 5);
    for (int i = 0; i < k; ++i) {
      Vec x = random_vec(rng, 2, 4);
      if (is_zero(x)) continue;
      x = primitive(x);
      by_angle.insert({std::atan2(x[1].get_d(), x[0].get_d()), x});
    }
    std::vector<Vec> rays;
    for (const auto& [a, x] : by_angle) rays.push_back(x);
    std::vector<Cone> cones;
    for (std::size_t i = 0; i < rays.size() && rays.size() >= 2; ++i) {
      const Vec& a = rays[i];
      const Vec& b = rays[(i + 1) % rays.size()];
      if (a[0] * b[1] - a[1] * b[0] > 0 && uniform(rng, 0, 2) > 0) cones.push_back(canonicalize_cone({a, b}, 2));
    }
    if (!cones.empty()) return Fan(2, cones);
  }
}

std::optional<Cone> try_cone(const std::vector<Vec>& gens, std::size_t n) {
  try {
    return canonicalize_cone(gens, n);
  } catch (const NotStronglyConvex&) {
    return std::nullopt;
  }
}

}  // namespace

TEST(PropertySuites, SnfContracts) { expect_clean(snf_contracts(101, kCases)); }
TEST(PropertySuites, UnstableEquivalence) {
  auto r = unstable_equivalence(202, kCases);
  expect_clean(r);
  EXPECT_GT(r.interesting, kCases / 5);
  EXPECT_LT(r.interesting, kCases * 4 / 5);
}
TEST(PropertySuites, AppendixExactness) { expect_clean(appendix_exactness(303, kCases)); }
TEST(PropertySuites, QuasiIsomorphismInvariance) { expect_clean(quasi_isomorphism_invariance(404, kCases)); }
TEST(PropertySuites, ProductConjunction) {
  auto r = product_conjunction(505, kCases);
  expect_clean(r);
  EXPECT_GT(r.interesting, 0);
}
TEST(PropertySuites, GmsOfFantastack) { expect_clean(gms_of_fantastack(606, kCases)); }
TEST(PropertySuites, MonoidIsoBruteForce) {
  auto r = monoid_iso_brute_force(707, kCases);
  expect_clean(r);
  EXPECT_GT(r.interesting, kCases / 10);
  EXPECT_LT(r.interesting, kCases * 9 / 10);
}

TEST(Polyhedral, CanonicalizeIdempotentAndOrderIndependent) {
  std::mt19937_64 rng(11);
  for (int c = 0; c < kCases; ++c) {
    std::size_t n = uniform(rng, 1, 4);
    std::vector<Vec> g;
    for (int i = uniform(rng, 1, 5); i > 0; --i) g.push_back(random_vec(rng, n, 4));
    auto a = try_cone(g, n);
    std::shuffle(g.begin(), g.end(), rng);
    for (auto& x : g) {
      long k = uniform(rng, 1, 3);
      for (auto& e : x) e *= k;
    }
    auto b = try_cone(g, n);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (!a) continue;
    EXPECT_EQ(*a, *b);
    EXPECT_EQ(canonicalize_cone(a->rays(), n), *a);
  }
}

TEST(Polyhedral, FacesClosure) {
  std::mt19937_64 rng(12);
  for (int c = 0; c < 200; ++c) {
    std::size_t n = uniform(rng, 1, 4);
    std::vector<Vec> g;
    for (int i = uniform(rng, 1, 5); i > 0; --i) g.push_back(random_vec(rng, n, 3));
    auto cone_opt = try_cone(g, n);
    if (!cone_opt) continue;
    auto fs = faces(*cone_opt);
    std::set<Cone> all(fs.begin(), fs.end());
    EXPECT_EQ(all.size(), fs.size());
    for (const auto& f : fs) {
      EXPECT_TRUE(is_face_of(f, *cone_opt));
      for (const auto& ff : faces(f)) EXPECT_TRUE(all.count(ff)) << ff.to_string() << " of " << f.to_string();
      for (const auto& h : fs) EXPECT_TRUE(all.count(intersect(f, h)));
    }
  }
}

TEST(Fgab, GenericStabilizerIsTorsionDual) {
  std::mt19937_64 rng(13);
  for (int c = 0; c < kCases; ++c) {
    std::size_t l = uniform(rng, 0, 4), r = uniform(rng, 0, 3);
    std::vector<Integer> tors;
    for (int k = uniform(rng, 0, 2), d = uniform(rng, 2, 4); k > 0; --k, d *= uniform(rng, 1, 2)) tors.emplace_back(d);
    FgAbGroup n(r, tors);
    std::vector<Vec> images;
    for (std::size_t i = 0; i < l; ++i) {
      Vec x = random_vec(rng, r, 10);
      for (const auto& d : tors) x.emplace_back(uniform(rng, 0, d.get_si() - 1));
      images.push_back(x);
    }
    auto g = mapping_cone_dual(FgAbHom::from_images(FgAbGroup::free(l), n, images));
    auto w = analyze_hom(FgAbHom(FgAbGroup::free(l), g.g1.character_group, g.g1.weights));
    EXPECT_EQ(w.cokernel, ext1(n));
    EXPECT_EQ(w.cokernel, n.torsion_subgroup());
  }
}

TEST(Stacky, GbetaIndependentOfFan) {
  std::mt19937_64 rng(14);
  for (int c = 0; c < 200; ++c) {
    std::size_t l = uniform(rng, 1, 4);
    FgAbGroup n(uniform(rng, 0, 3), {});
    std::vector<Vec> images;
    for (std::size_t i = 0; i < l; ++i) images.push_back(random_vec(rng, n.free_rank(), 10));
    auto a = gbeta(StackyFan(affine_fan(l), n, images));
    auto b = gbeta(StackyFan(punctured_affine_fan(l), n, images));
    auto t = gbeta(StackyFan(Fan::trivial(l), n, images));
    EXPECT_EQ(a.g1, b.g1);
    EXPECT_EQ(a.g1, t.g1);
    EXPECT_EQ(a.g0_rank, t.g0_rank);
  }
}

TEST(Stacky, RemovedLocusFromMaximalConesOfA4) {
  std::mt19937_64 rng(15);
  for (int c = 0; c < 200; ++c) {
    std::vector<std::uint64_t> masks;
    for (std::uint64_t m = 0; m < 16; ++m)
      if (uniform(rng, 0, 3) == 0) masks.push_back(m);
    if (masks.empty()) masks.push_back(0);
    std::vector<Cone> cones;
    for (auto m : masks) {
      std::vector<Vec> e;
      for (std::size_t i = 0; i < 4; ++i)
        if (m >> i & 1) {
          Vec x(4, 0);
          x[i] = 1;
          e.push_back(x);
        }
      cones.push_back(canonicalize_cone(e, 4));
    }
    Fan f = Fan::generated_by(4, cones);
    std::vector<Cone> with_faces;
    for (const auto& cc : f.cones()) with_faces.push_back(cc);
    EXPECT_EQ(Fan::generated_by(4, with_faces), f);
    auto q = present_quotient(StackyFan::toric_variety(f));

    // A coordinate set T is removed iff it lies in no cone; keep the minimal such sets.
    std::vector<std::uint64_t> bad;
    for (std::uint64_t t = 0; t < 16; ++t) {
      bool inside = false;
      for (auto m : masks)
        if ((t & ~m) == 0) inside = true;
      if (!inside) bad.push_back(t);
    }
    std::vector<IndexSet> expect;
    for (auto t : bad) {
      bool minimal = true;
      for (auto u : bad)
        if (u != t && (u & ~t) == 0) minimal = false;
      if (minimal) expect.push_back(mask_to_indices(t));
    }
    std::sort(expect.begin(), expect.end());
    auto got = q.removed_locus;
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expect);
  }
}

TEST(Constructions, CanonicalStacksAreSmoothGoodModuliSpaces) {
  std::mt19937_64 rng(16);
  for (int c = 0; c < 200; ++c) {
    Fan f = random_fan_2d(rng);
    auto cs = canonical_stack(StackyFan::toric_variety(f));
    EXPECT_TRUE(cs.sf.fan.is_smooth());
    EXPECT_TRUE(validate_morphism(cs.morphism).valid);
    EXPECT_TRUE(gms_check(cs.morphism).verdict);
    bool full_span = rank(IntMatrix::from_columns(f.rays(), 2)) == 2;
    if (f.is_smooth() && full_span) EXPECT_TRUE(is_isomorphism(cs.morphism).isomorphism);
  }
}

TEST(Constructions, CanonicalStackOfSmoothFanIsIsomorphism) {
  std::mt19937_64 rng(17);
  int seen = 0;
  while (seen < 200) {
    auto f = random_coordinate_fan(rng, uniform(rng, 1, 3));
    if (!f) continue;
    ++seen;
    auto cs = canonical_stack(StackyFan::toric_variety(*f));
    auto r = is_isomorphism(cs.morphism);
    EXPECT_TRUE(r.isomorphism) << r.failing_condition;
  }
}

TEST(Constructions, CanonicalStackStableUnderOpenImmersion) {
  std::mt19937_64 rng(18);
  for (int c = 0; c < 200; ++c) {
    Fan f = random_fan_2d(rng);
    auto rays = f.rays();
    if (rays.size() < 2) continue;
    const Vec& drop = rays[uniform(rng, 0, rays.size() - 1)];
    std::vector<Cone> kept;
    for (const auto& cc : f.cones())
      if (std::find(cc.rays().begin(), cc.rays().end(), drop) == cc.rays().end()) kept.push_back(cc);
    Fan sub = Fan::generated_by(2, kept);
    auto whole = canonical_stack(StackyFan::toric_variety(f));
    auto part = canonical_stack(StackyFan::toric_variety(sub));

    // Coordinates of part.sf correspond to the rays of the restricted base.
    std::vector<std::size_t> where;
    for (const auto& r : part.rays) {
      auto it = std::find(whole.rays.begin(), whole.rays.end(), r);
      ASSERT_NE(it, whole.rays.end());
      where.push_back(it - whole.rays.begin());
    }
    const std::size_t n = whole.rays.size();
    for (std::size_t i = 0; i < where.size(); ++i) EXPECT_EQ(part.sf.beta_images[i], whole.sf.beta_images[where[i]]);

    // The restriction of the big datum over the smaller base, pulled back along the coordinate embedding.
    std::set<Cone> restricted;
    for (const auto& cc : whole.sf.fan.cones()) {
      bool ok = true;
      for (const auto& r : cc.rays()) {
        std::size_t idx = std::find(r.begin(), r.end(), Integer(1)) - r.begin();
        if (std::find(where.begin(), where.end(), idx) == where.end()) ok = false;
      }
      if (ok) restricted.insert(cc);
    }
    std::set<Cone> embedded;
    for (const auto& cc : part.sf.fan.cones()) {
      std::vector<Vec> rs;
      for (const auto& r : cc.rays()) {
        std::size_t idx = std::find(r.begin(), r.end(), Integer(1)) - r.begin();
        Vec x(n, 0);
        x[where[idx]] = 1;
        rs.push_back(x);
      }
      embedded.insert(canonicalize_cone(rs, n));
    }
    EXPECT_EQ(restricted, embedded);
  }
}

TEST(Constructions, ModuliRelationsAreKernelOfWeights) {
  std::mt19937_64 rng(19);
  int seen = 0;
  while (seen < 200) {
    auto f = random_coordinate_fan(rng, uniform(rng, 1, 3));
    if (!f) continue;
    ++seen;
    auto cs = cox_presentation(*f);
    auto md = moduli_description(cs.sf);
    auto g = gbeta(cs.sf);
    const std::size_t n = md.n;
    IntMatrix rel = IntMatrix::from_columns(md.linear_relations, n);
    auto w = analyze_hom(FgAbHom(FgAbGroup::free(n), g.g1.character_group, g.g1.weights));
    EXPECT_EQ(lattice_basis(rel), lattice_basis(IntMatrix::from_columns(w.kernel_generators, n)));
    EXPECT_EQ(cokernel_presentation(rel).group, g.g1.character_group);
  }
}
