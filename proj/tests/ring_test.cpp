#include <gtest/gtest.h>

#include <array>
#include <random>
#include <vector>

#include "divisor_lab/catalog.hpp"
#include "divisor_lab/ring_equations.hpp"
#include "test_support.hpp"

namespace divlab {
namespace {

std::vector<FiniteRing> small_rings() {
  std::vector<FiniteRing> out;
  for (int k = 1; k <= 12; ++k) out.push_back(FiniteRing::modular(k));
  out.push_back(FiniteRing::matrix(2, 2));
  out.push_back(FiniteRing::matrix(3, 2));
  out.push_back(FiniteRing::group_ring(2, symmetric_group(3)));
  out.push_back(FiniteRing::group_ring(3, cyclic_group(4)));
  return out;
}

RingElement random_element(std::mt19937_64& rng, const FiniteRing& r) {
  std::vector<std::int64_t> c(r.width());
  for (auto& x : c) x = static_cast<std::int64_t>(rng() % 1000) - 500;
  return r.element(c);
}

TEST(Ring, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(41);
  for (const auto& r : small_rings()) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = random_element(rng, r), b = random_element(rng, r), c = random_element(rng, r);
      ASSERT_EQ(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c))) << r.describe();
      ASSERT_EQ(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c))) << r.describe();
      ASSERT_EQ(r.mul(r.add(a, b), c), r.add(r.mul(a, c), r.mul(b, c))) << r.describe();
      ASSERT_EQ(r.mul(r.one(), a), a);
      ASSERT_EQ(r.mul(a, r.one()), a);
      ASSERT_TRUE(r.is_zero(r.add(a, r.neg(a))));
      ASSERT_EQ(r.add(a, b), r.add(b, a));
    }
    EXPECT_EQ(r.one() == r.zero(), r.modulus() == 1) << r.describe();
  }
}

TEST(Ring, ElementCountsAndUnits) {
  EXPECT_EQ(FiniteRing::matrix(2, 2).all_elements().size(), 16U);
  EXPECT_EQ(all_units(FiniteRing::modular(12)).group.order(), 4U);
  EXPECT_EQ(all_units(FiniteRing::modular(7)).group.order(), 6U);
  const auto gl2 = all_units(FiniteRing::matrix(2, 2));
  EXPECT_EQ(gl2.group.order(), 6U);
  EXPECT_FALSE(gl2.group.is_abelian());
  EXPECT_EQ(all_units(FiniteRing::matrix(3, 2)).group.order(), 48U);
  EXPECT_EQ(all_units(FiniteRing::modular(1)).group.order(), 1U);
}

TEST(Ring, InverseAgreesWithSearch) {
  for (const auto& r : {FiniteRing::matrix(2, 2), FiniteRing::modular(10), FiniteRing::group_ring(2, cyclic_group(3))}) {
    const auto all = r.all_elements();
    for (const auto& x : all) {
      bool found = false;
      for (const auto& y : all) found = found || (r.mul(x, y) == r.one() && r.mul(y, x) == r.one());
      EXPECT_EQ(r.inverse(x).has_value(), found) << r.format(x);
    }
  }
}

TEST(Ring, FormatGroupRing) {
  const auto r = FiniteRing::group_ring(3, symmetric_group(3));
  const auto s3 = r.base_group();
  const auto e = r.add(r.basis(s3.id_of("(1,2)")), r.scalar(2));
  EXPECT_EQ(r.format(e), "2*() + (1,2)");
  EXPECT_EQ(r.format(r.zero()), "0");
}

TEST(Embedding, RejectsNonHomomorphism) {
  const auto r = FiniteRing::modular(5);
  UnitEmbedding e{cyclic_group(2), {r.scalar(1), r.scalar(2)}};
  EXPECT_THROW(validate_embedding(r, e, true), Error);
  UnitEmbedding ok{cyclic_group(2), {r.scalar(1), r.scalar(4)}};
  EXPECT_NO_THROW(validate_embedding(r, ok, true));
  UnitEmbedding trivial{cyclic_group(2), {r.scalar(1), r.scalar(1)}};
  EXPECT_NO_THROW(validate_embedding(r, trivial, false));
  EXPECT_THROW(validate_embedding(r, trivial, true), Error);
}

RingTerm term(std::vector<RingFactor> f) { return RingTerm{std::move(f)}; }

/// {a x^3 y^2 + y^7 b x - 1 = 0, x y^2 x + y^7 x^5 = 0}
RingEquationSystem displayed_system() {
  const auto r = FiniteRing::modular(7);
  const auto units = all_units(r);
  const RingElement a = r.scalar(2), b = r.scalar(3);
  RingEquation e1{{term({ScalarFactor{a}, VariablePower{0, 3}, VariablePower{1, 2}}),
                   term({VariablePower{1, 7}, ScalarFactor{b}, VariablePower{0, 1}}), term({ScalarFactor{r.scalar(-1)}})}};
  RingEquation e2{{term({VariablePower{0, 1}, VariablePower{1, 2}, VariablePower{0, 1}}),
                   term({VariablePower{1, 7}, VariablePower{0, 5}})}};
  return RingEquationSystem(r, {"x", "y"}, {e1, e2}, units);
}

/// Largest n <= limit for which some degree map into Z/n, generating Z/n,
/// makes every equation homogeneous; 0 if every n <= limit works.
long long homogeneity_oracle(const RingEquationSystem& sys, long long limit) {
  const std::size_t m = sys.arity();
  long long best = 0;
  for (long long n = 1; n <= limit; ++n) {
    std::vector<long long> d(m, 0);
    bool any = false;
    for (;;) {
      long long g = n;
      for (auto x : d) g = std::gcd(g, x);
      bool ok = g == 1;
      for (const auto& eq : sys.equations()) {
        std::optional<long long> deg;
        for (const auto& t : eq.terms) {
          long long s = 0;
          for (const auto& f : t.factors)
            if (auto v = std::get_if<VariablePower>(&f)) s += v->exponent * d[v->variable];
          s = ((s % n) + n) % n;
          if (deg && *deg != s) ok = false;
          deg = s;
        }
      }
      if (ok) {
        any = true;
        break;
      }
      std::size_t i = 0;
      while (i < m && ++d[i] == n) d[i++] = 0;
      if (i == m) break;
    }
    if (any) best = n;
  }
  return best == limit ? 0 : best;
}

TEST(Homogeneity, DisplayedExample) {
  const auto sys = displayed_system();
  const IntMatrix a = homogeneity_matrix(sys);
  EXPECT_EQ(a, (IntMatrix{{3, 2, 1, 0}, {1, 7, 1, 0}, {0, 0, 1, 0}, {2, 2, 0, 1}, {5, 7, 0, 1}}));
  EXPECT_EQ(homogeneity_modulus(sys), 1);
  EXPECT_EQ(homogeneity_oracle(sys, 30), 1);
}

TEST(Homogeneity, SmallExamples) {
  const auto r = FiniteRing::matrix(2, 2);
  const auto units = all_units(r);
  const RingEquationSystem one_eq(r, {"x"},
                                  {RingEquation{{term({ScalarFactor{r.one()}, VariablePower{0, 3}}),
                                                 term({ScalarFactor{r.one()}, VariablePower{0, 1}})}}},
                                  units);
  EXPECT_EQ(homogeneity_matrix(one_eq), (IntMatrix{{3, 1}, {1, 1}}));
  EXPECT_EQ(homogeneity_modulus(one_eq), 2);
  EXPECT_EQ(homogeneity_oracle(one_eq, 30), 2);

  const RingEquationSystem constant(r, {"x"}, {RingEquation{{term({ScalarFactor{r.one()}})}}}, units);
  EXPECT_EQ(homogeneity_matrix(constant), (IntMatrix{{0, 1}}));
  EXPECT_EQ(count_ring_solutions(constant), 0U);
}

TEST(Homogeneity, OracleOnRandomSystems) {
  std::mt19937_64 rng(43);
  const auto r = FiniteRing::modular(5);
  const auto units = all_units(r);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + rng() % 2;
    std::vector<RingEquation> eqs(1 + rng() % 2);
    for (auto& eq : eqs)
      for (std::size_t t = 1 + rng() % 3; t > 0; --t) {
        RingTerm term;
        for (std::size_t f = rng() % 3; f > 0; --f)
          term.factors.push_back(VariablePower{rng() % m, static_cast<long long>(rng() % 9) - 4});
        eq.terms.push_back(term);
      }
    std::vector<std::string> names = {"x", "y"};
    names.resize(m);
    const RingEquationSystem sys(r, names, eqs, units);
    const BigInt modulus = homogeneity_modulus(sys);
    const long long oracle = homogeneity_oracle(sys, 40);
    if (modulus > 40) continue;
    EXPECT_EQ(modulus, oracle) << homogeneity_matrix(sys).to_string();
  }
}

TEST(Theorem3, CubePlusIdentityInGL2) {
  const auto r = FiniteRing::matrix(2, 2);
  const auto units = all_units(r);
  const RingEquationSystem sys(r, {"x"}, {RingEquation{{term({VariablePower{0, 3}}), term({VariablePower{0, 1}})}}},
                               units);
  // oracle: plain 2x2 arithmetic mod 2 over the six invertible matrices
  using M = std::array<int, 4>;
  auto mul = [](const M& a, const M& b) {
    return M{(a[0] * b[0] + a[1] * b[2]) % 2, (a[0] * b[1] + a[1] * b[3]) % 2, (a[2] * b[0] + a[3] * b[2]) % 2,
             (a[2] * b[1] + a[3] * b[3]) % 2};
  };
  int oracle = 0;
  for (int bits = 0; bits < 16; ++bits) {
    const M x{bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1};
    if ((x[0] * x[3] + x[1] * x[2]) % 2 == 0) continue;
    const M c = mul(mul(x, x), x);
    bool zero = true;
    for (int i = 0; i < 4; ++i) zero = zero && (c[i] + x[i]) % 2 == 0;
    oracle += zero;
  }
  EXPECT_EQ(oracle, 4);
  const auto rep = theorem3_verdict(sys);
  EXPECT_EQ(rep.solution_count, 4U);
  EXPECT_EQ(*rep.breakdown.invariant_factor, 2);
  EXPECT_EQ(*rep.breakdown.centralizer_order, 6U);
  EXPECT_EQ(rep.bound, 2U);
  EXPECT_TRUE(rep.divides);
}

TEST(Theorem3, TrivialSystems) {
  const auto r = FiniteRing::modular(7);
  const auto units = all_units(r);
  const RingEquationSystem same(r, {"x"},
                                {RingEquation{{term({VariablePower{0, 1}}),
                                               term({ScalarFactor{r.scalar(-1)}, VariablePower{0, 1}})}}},
                                units);
  EXPECT_EQ(count_ring_solutions(same), 6U);
}

TEST(Theorem3, RingFormMatchesTheorem1) {
  std::mt19937_64 rng(47);
  const auto corpus = catalog_corpus(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& g = corpus[rng() % corpus.size()].group;
    const std::size_t m = 1 + rng() % 3;
    std::vector<GeneralizedEquation> eqs;
    for (std::size_t i = 1 + rng() % 3; i > 0; --i) {
      std::vector<Letter> letters;
      for (std::size_t l = 1 + rng() % 8; l > 0; --l) {
        if (rng() % 4 == 0)
          letters.emplace_back(CoefficientLetter{static_cast<ElementId>(rng() % g.order()), rng() % 2 == 0});
        else
          letters.emplace_back(VariableLetter{rng() % m, rng() % 2 ? 1 : -1});
      }
      eqs.push_back({Word(m, letters), Subgroup::trivial(g), identity_id, ""});
    }
    std::vector<std::string> names = {"x", "y", "z"};
    names.resize(m);
    const GeneralizedSystem sys(g, names, eqs, {});
    const auto ring_sys = ring_form(sys, 2);
    ASSERT_EQ(homogeneity_modulus(ring_sys), invariant_factor(system_matrix(sys), m));
    if (m <= 2) {
      ASSERT_EQ(count_ring_solutions(ring_sys), count_solutions(sys));
    }
  }
}

TEST(Theorem3, HoldsOnRandomRingSystems) {
  std::mt19937_64 rng(53);
  struct Setting {
    FiniteRing ring;
    UnitEmbedding units;
  };
  std::vector<Setting> settings;
  for (int k = 2; k <= 12; ++k) settings.push_back({FiniteRing::modular(k), all_units(FiniteRing::modular(k))});
  settings.push_back({FiniteRing::matrix(2, 2), all_units(FiniteRing::matrix(2, 2))});
  settings.push_back({FiniteRing::matrix(3, 2), all_units(FiniteRing::matrix(3, 2))});
  const auto gr1 = FiniteRing::group_ring(2, symmetric_group(3));
  settings.push_back({gr1, group_ring_embedding(gr1)});
  const auto gr2 = FiniteRing::group_ring(3, cyclic_group(4));
  settings.push_back({gr2, group_ring_embedding(gr2)});

  for (int trial = 0; trial < 150; ++trial) {
    const auto& s = settings[rng() % settings.size()];
    const std::size_t m = s.units.group.order() > 12 ? 1 : 1 + rng() % 2;
    std::vector<RingEquation> eqs(1 + rng() % 2);
    for (auto& eq : eqs)
      for (std::size_t t = 1 + rng() % 3; t > 0; --t) {
        RingTerm term;
        for (std::size_t f = rng() % 4; f > 0; --f) {
          if (rng() % 3 == 0)
            term.factors.push_back(ScalarFactor{random_element(rng, s.ring)});
          else
            term.factors.push_back(VariablePower{rng() % m, static_cast<long long>(rng() % 7) - 3});
        }
        eq.terms.push_back(term);
      }
    std::vector<std::string> names = {"x", "y"};
    names.resize(m);
    const RingEquationSystem sys(s.ring, names, eqs, s.units);
    const auto rep = theorem3_verdict(sys);
    ASSERT_TRUE(rep.divides) << s.ring.describe() << " count " << rep.solution_count << " bound " << rep.bound;
  }
}

TEST(Representation, FrobeniusCase) {
  const auto s3 = symmetric_group(3);
  const auto r = FiniteRing::group_ring(2, s3);
  const auto rho = group_ring_embedding(r);
  for (long long n = 1; n <= 6; ++n) {
    const auto v = representation_example_verdict(r, rho, 1, {parse_word("x", {"x"})}, {n});
    EXPECT_EQ(v.solution_count, frobenius1903_verdict(s3, n, identity_id).solution_count);
    EXPECT_EQ(*v.lcm_bound, std::gcd<std::uint64_t>(6, n));
    EXPECT_TRUE(v.divides);
  }
}

TEST(Representation, FewerSummandsThanUnknowns) {
  const auto s3 = symmetric_group(3);
  const auto r = FiniteRing::group_ring(5, s3);
  const auto v = representation_example_verdict(r, group_ring_embedding(r), 2, {parse_word("[x,y]", {"x", "y"})}, {1});
  EXPECT_EQ(v.solution_count, 18U);
  ASSERT_TRUE(v.order_bound.has_value());
  EXPECT_EQ(*v.order_bound, 6U);
  EXPECT_EQ(v.bound, 6U);
  EXPECT_TRUE(v.divides);
}

TEST(Representation, NonInjectiveSign) {
  const auto s3 = symmetric_group(3);
  const auto r = FiniteRing::modular(3);
  UnitEmbedding sign{s3, {}};
  for (ElementId x = 0; x < 6; ++x) sign.images.push_back(r.scalar(s3.element_order(x) == 2 ? -1 : 1));
  const auto v = representation_example_verdict(r, sign, 2, {parse_word("x", {"x", "y"}), parse_word("y", {"x", "y"})},
                                                {1, 1});
  EXPECT_EQ(v.solution_count, 9U);
  EXPECT_TRUE(v.divides);
  EXPECT_FALSE(v.order_bound.has_value());
}

TEST(Fact, GroupCases) {
  const GroupMonoid mon{symmetric_group(3)};
  const auto& g = mon.g;
  const ElementId a = g.id_of("(1,2,3)"), h = identity_id, t = g.id_of("(1,2)");
  const ElementId b[] = {t, identity_id};
  const long long m1[] = {2};
  EXPECT_TRUE(km17_fact_check(mon, std::span<const ElementId>(b), m1, a, h).holds);

  // h in the rotation subgroup commutes with rotations only
  const ElementId rot[] = {a, g.id_of("(1,3,2)"), identity_id};
  const long long m3[] = {1, -1};
  EXPECT_TRUE(km17_fact_check(mon, std::span<const ElementId>(rot), m3, t, a).holds);
  EXPECT_THROW(km17_fact_check(mon, std::span<const ElementId>(b), m1, a, a), Error);
}

TEST(Fact, AbelianExpansion) {
  const GroupMonoid mon{cyclic_group(7)};
  const auto& g = mon.g;
  for (ElementId a = 0; a < 7; ++a)
    for (ElementId h = 0; h < 7; ++h) {
      const ElementId b[] = {3, 5, 1};
      const long long m[] = {2, 1};
      const auto v = km17_fact_check(mon, std::span<const ElementId>(b), m, a, h);
      EXPECT_TRUE(v.holds);
      EXPECT_EQ(v.exponent_sum, 3);
      // u(ah) = h^3 u(a) in an abelian group
      const ElementId ua = g.mul(g.mul(g.mul(3, g.pow(a, 2)), 5), g.mul(a, 1));
      const ElementId uah = g.mul(g.mul(g.mul(3, g.pow(g.mul(a, h), 2)), 5), g.mul(g.mul(a, h), 1));
      EXPECT_EQ(uah, g.mul(g.pow(h, 3), ua));
    }
}

TEST(Fact, RingMonoid) {
  const RingMonoid mon{FiniteRing::matrix(3, 2)};
  const auto& r = mon.r;
  const RingElement a = r.element({1, 1, 0, 1}), h = r.element({2, 0, 0, 2});  // h central
  const RingElement b[] = {r.element({0, 1, 2, 0}), r.element({1, 2, 0, 0})};
  for (long long e = -3; e <= 3; ++e) {
    const long long m[] = {e};
    EXPECT_TRUE(km17_fact_check(mon, std::span<const RingElement>(b), m, a, h).holds) << e;
  }
  EXPECT_THROW(km17_fact_check(mon, std::span<const RingElement>(b), std::span<const long long>(), r.zero(), h),
               Error);
}

}  // namespace
}  // namespace divlab
