#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "divisor_lab/catalog.hpp"
#include "divisor_lab/hom_verify.hpp"

namespace divlab {
namespace {

TEST(EnumerateHoms, Examples) {
  const auto s3 = symmetric_group(3);
  EXPECT_EQ(enumerate_homs(make_presentation({"g", "h"}, {}), s3).size(), 36U);
  EXPECT_EQ(enumerate_homs(make_presentation({"g"}, {"g^2"}), s3).size(), 4U);
  EXPECT_EQ(enumerate_homs(make_presentation({"g"}, {"g^3"}), cyclic_group(2)).size(), 1U);
  // commuting pairs
  EXPECT_EQ(enumerate_homs(make_presentation({"g", "h"}, {"[g,h]"}), s3).size(), 18U);
}

TEST(Indexing, Validation) {
  const auto p = make_presentation({"g", "h"}, {"g^2", "[g,h]"});
  EXPECT_NO_THROW(validate_indexing(p, {{1, 0}, 2}));
  EXPECT_THROW(validate_indexing(p, {{1, 0}, 3}), Error);  // g^2 has degree 2
  EXPECT_THROW(validate_indexing(p, {{0, 0}, 2}), Error);  // not onto
  EXPECT_THROW(validate_indexing(p, {{1}, 2}), Error);
  EXPECT_NO_THROW(validate_indexing(p, {{0, 1}, 5}));
}

TEST(CanonicalWord, LengthThenLex) {
  const auto p = make_presentation({"g", "h"}, {});
  EXPECT_EQ(canonical_degree_one_word(p, {{0, 1}, 3}), parse_word("h", p.generators));
  EXPECT_EQ(canonical_degree_one_word(p, {{2, 0}, 3}), parse_word("g^-1", p.generators));
  EXPECT_EQ(canonical_degree_one_word(p, {{2, 3}, 5}), parse_word("g^-1 g^-1", p.generators));
  EXPECT_TRUE(canonical_degree_one_word(p, {{0, 0}, 1}).empty());
}

TEST(PhiCore, Examples) {
  const auto s3 = symmetric_group(3);
  const auto p = make_presentation({"g"}, {"g^6"});
  const Indexing idx{{1}, 2};
  const auto a3 = subgroup_generated(s3, {s3.id_of("(1,2,3)")});
  const HomImages phi = {s3.id_of("(1,2)")};
  const auto sets = hom_image_sets(s3, idx, phi);
  EXPECT_EQ(sets.kernel_image, std::vector<ElementId>{identity_id});
  EXPECT_EQ(phi_core(s3, idx, phi, a3), a3);
  EXPECT_TRUE(phi_core(s3, idx, phi, Subgroup::trivial(s3)).is_trivial());
  const HomImages trivial = {identity_id};
  const auto t12 = subgroup_generated(s3, {s3.id_of("(1,2)")});
  EXPECT_EQ(phi_core(s3, idx, trivial, t12), t12);
  // (1,2) conjugates <(1,3)> to <(2,3)>, so the core of <(1,3)> is trivial
  EXPECT_TRUE(phi_core(s3, idx, phi, subgroup_generated(s3, {s3.id_of("(1,3)")})).is_trivial());
}

TEST(Lemma0, Examples) {
  const auto s3 = symmetric_group(3);
  const auto p = make_presentation({"g"}, {"g^6"});
  const Indexing idx{{1}, 2};
  const HomImages phi = {s3.id_of("(1,2)")};
  const Word f1 = canonical_degree_one_word(p, idx);

  const auto same = lemma0_check(s3, p, idx, phi, f1, identity_id);
  EXPECT_TRUE(same.by_conditions);
  EXPECT_TRUE(same.by_construction);
  EXPECT_EQ(*same.psi, phi);

  const auto a3 = subgroup_generated(s3, {s3.id_of("(1,2,3)")});
  const auto core = phi_core(s3, idx, phi, a3);
  for (ElementId h : core.members()) {
    const auto r = lemma0_check(s3, p, idx, phi, f1, h);
    EXPECT_TRUE(r.by_conditions);
    EXPECT_TRUE(r.by_construction);
  }

  std::size_t violations = 0;
  for (ElementId g = 0; g < 6; ++g) {
    const auto r = lemma0_check(s3, p, idx, phi, f1, g);
    EXPECT_EQ(r.by_conditions, r.by_construction) << s3.name(g);
    if (s3.pow(s3.mul(phi[0], g), 2) != s3.pow(phi[0], 2)) {
      ++violations;
      EXPECT_FALSE(r.by_construction);
    }
  }
  EXPECT_GT(violations, 0U);
  EXPECT_THROW(lemma0_check(s3, p, idx, phi, parse_word("g^2", p.generators), identity_id), Error);
}

TEST(Lemma0, SweepAgrees) {
  const std::vector<FinitePresentation> presentations = {
      make_presentation({"g"}, {}),           make_presentation({"g"}, {"g^2"}),
      make_presentation({"g"}, {"g^4"}),      make_presentation({"g"}, {"g^6"}),
      make_presentation({"g", "h"}, {}),      make_presentation({"g", "h"}, {"[g,h]"}),
      make_presentation({"g", "h"}, {"g^2", "h^2", "(g h)^3"}),
      make_presentation({"g", "h"}, {"g h g^-1 h"}),
  };
  for (const auto& g : {symmetric_group(3), cyclic_group(4), quaternion_group()}) {
    for (const auto& p : presentations) {
      const auto homs = enumerate_homs(p, g);
      for (long long n = 1; n <= 4; ++n) {
        std::vector<long long> d(p.rank(), 0);
        for (;;) {
          const Indexing idx{d, n};
          bool valid = true;
          try {
            validate_indexing(p, idx);
          } catch (const Error&) {
            valid = false;
          }
          if (valid) {
            const Word f1 = canonical_degree_one_word(p, idx);
            for (const auto& phi : homs)
              for (ElementId x = 0; x < g.order(); ++x) {
                const auto r = lemma0_check(g, p, idx, phi, f1, x);
                ASSERT_EQ(r.by_conditions, r.by_construction);
                if (r.psi) {
                  ASSERT_TRUE(satisfies_relators(g, p, *r.psi));
                }
              }
          }
          std::size_t i = 0;
          while (i < d.size() && ++d[i] == n) d[i++] = 0;
          if (i == d.size()) break;
        }
      }
    }
  }
}

TEST(Conditions, AllHomsAreClosed) {
  const auto s3 = symmetric_group(3);
  const auto p = make_presentation({"g", "h"}, {"[g,h]"});
  const Indexing idx{{1, 0}, 3};
  const auto homs = enumerate_homs(p, s3);
  const auto a3 = subgroup_generated(s3, {s3.id_of("(1,2,3)")});
  const auto v = conditions_check(s3, p, idx, homs, a3);
  EXPECT_TRUE(v.closed_I);
  EXPECT_TRUE(v.closed_II);
  EXPECT_TRUE(v.twist_exists);
  EXPECT_TRUE(v.lemma1_holds);
  ASSERT_TRUE(v.divides.has_value());
  EXPECT_TRUE(*v.divides);
}

TEST(Conditions, EmptyAndSingleton) {
  const auto s3 = symmetric_group(3);
  const auto p = make_presentation({"g"}, {});
  const Indexing idx{{1}, 2};
  const auto t12 = subgroup_generated(s3, {s3.id_of("(1,2)")});
  const auto empty = conditions_check(s3, p, idx, {}, t12);
  EXPECT_TRUE(empty.closed_I && empty.closed_II);
  EXPECT_TRUE(*empty.divides);

  const auto single = conditions_check(s3, p, idx, {{s3.id_of("(1,2,3)")}}, t12);
  EXPECT_FALSE(single.closed_I);
  EXPECT_FALSE(single.divides.has_value());
  EXPECT_FALSE(single.witness.empty());

  EXPECT_THROW(conditions_check(s3, p, Indexing{{1}, 3}, {}, t12), Error);
  EXPECT_THROW(conditions_check(s3, make_presentation({"g"}, {"g^2"}), idx, {{s3.id_of("(1,2,3)")}}, t12), Error);
}

TEST(Conditions, SystemInstanceIsClosed) {
  const auto s3 = symmetric_group(3);
  const auto sys = make_system(s3, {"x"}, {}, {{"x^2", {s3.id_of("(1,2)")}, s3.id_of("(1,2,3)")}},
                               std::vector<std::size_t>{});
  const auto inst = hom_instance_from_system(sys);
  EXPECT_EQ(inst.h.order(), 2U);
  const auto v = conditions_check(s3, inst.presentation, inst.indexing, inst.homs, inst.h);
  EXPECT_TRUE(v.closed_I);
  EXPECT_TRUE(v.closed_II);
  EXPECT_TRUE(v.lemma1_holds);
  EXPECT_TRUE(*v.divides);
  EXPECT_EQ(v.phi_size, count_solutions(sys));
}

TEST(Conditions, SystemWithCoefficients) {
  const auto s4 = symmetric_group(4);
  const auto sys = make_system(s4, {"x", "y"}, {{"a", s4.id_of("(1,2)")}},
                               {{"x^2 a y^2", {}, identity_id}, {"x^2", {s4.id_of("(3,4)")}, identity_id}},
                               std::vector<std::size_t>{0});
  const auto inst = hom_instance_from_system(sys);
  const auto v = conditions_check(s4, inst.presentation, inst.indexing, inst.homs, inst.h);
  EXPECT_TRUE(v.closed_I);
  EXPECT_TRUE(v.closed_II);
  EXPECT_TRUE(v.lemma1_holds);
  EXPECT_TRUE(*v.divides);
}

}  // namespace
}  // namespace divlab
