#include <gtest/gtest.h>

#include <set>

#include "divisor_lab/explore.hpp"

using namespace divlab;

TEST(SplitMix64, ReferenceVectors) {
  SplitMix64 a(0);
  EXPECT_EQ(a.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(a.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(a.next(), 0x06C45D188009454FULL);
  SplitMix64 b(1234567);
  EXPECT_EQ(b.next(), 6457827717110365317ULL);
  EXPECT_EQ(b.next(), 3203168211198807973ULL);
}

TEST(SplitMix64, SplitIsDeterministicAndDoesNotAdvance) {
  const SplitMix64 root(42);
  SplitMix64 x = root.split(3), y = root.split(3), z = root.split(4);
  const auto vx = x.next();
  EXPECT_EQ(vx, y.next());
  EXPECT_NE(vx, z.next());
  SplitMix64 r1 = root, r2 = root;
  (void)r1.split(9);
  EXPECT_EQ(r1.next(), r2.next());
}

TEST(SplitMix64, BoundedDraws) {
  SplitMix64 r(5);
  std::vector<int> hist(6, 0);
  for (int i = 0; i < 60000; ++i) ++hist[r.below(6)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 600);
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.between(-3, 4);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 4);
  }
  EXPECT_THROW(r.below(0), std::invalid_argument);
}

namespace {

ExplorationConfig config(Question q, std::uint64_t trials, std::uint64_t seed, std::size_t max_order = 12) {
  ExplorationConfig c;
  c.question = q;
  c.trials = trials;
  c.seed = seed;
  c.max_order = max_order;
  return c;
}

}  // namespace

TEST(Explore, SameSeedSameBytes) {
  for (auto q : {Question::q1, Question::q2, Question::q3, Question::q4}) {
    auto c = config(q, 40, 11);
    c.threads = 1;
    const auto one = exploration_to_json(explore(c)).dump();
    c.threads = 4;
    const auto four = exploration_to_json(explore(c)).dump();
    EXPECT_EQ(one, four) << to_string(q);
  }
}

TEST(Explore, DifferentSeedsDiffer) {
  const auto a = exploration_to_json(explore(config(Question::q1, 20, 1))).dump();
  const auto b = exploration_to_json(explore(config(Question::q1, 20, 2))).dump();
  EXPECT_NE(a, b);
}

TEST(Explore, InstanceDependsOnlyOnIndex) {
  const auto c = config(Question::q2, 30, 8);
  const auto rep = explore(c);
  for (std::uint64_t i : {0U, 7U, 29U}) EXPECT_EQ(generate_instance(c, i), rep.records[i].instance);
}

TEST(Explore, RecordsReplay) {
  for (auto q : {Question::q1, Question::q2, Question::q3, Question::q4}) {
    const auto rep = explore(config(q, 30, 99));
    for (const auto& r : rep.records) {
      const auto again = evaluate_instance(q, parse_json_text(r.instance.dump()));
      EXPECT_EQ(again.count, r.outcome.count);
      EXPECT_EQ(again.weak_bound, r.outcome.weak_bound);
      EXPECT_EQ(again.strong_bound, r.outcome.strong_bound);
    }
  }
}

TEST(Explore, WeakBoundAlwaysDivides) {
  for (auto q : {Question::q1, Question::q2, Question::q3, Question::q4}) {
    const auto rep = explore(config(q, 150, 2024, 16));
    EXPECT_EQ(rep.weak_failures, 0U) << to_string(q);
    for (const auto& r : rep.records) EXPECT_TRUE(r.outcome.weak_divides);
  }
}

TEST(Explore, StrongBoundIsAMultipleOfWeak) {
  for (auto q : {Question::q1, Question::q2, Question::q3, Question::q4}) {
    const auto rep = explore(config(q, 100, 5, 16));
    for (const auto& r : rep.records) EXPECT_EQ(r.outcome.strong_bound % r.outcome.weak_bound, 0U);
  }
}

TEST(Explore, TrivialCaseWhenLowerMinorsAreUnimodular) {
  const auto rep = explore(config(Question::q1, 200, 3, 16));
  std::size_t seen = 0;
  for (const auto& r : rep.records) {
    if (r.outcome.details.at("delta_m_minus_1") != 1) continue;
    ++seen;
    EXPECT_EQ(r.outcome.weak_bound, r.outcome.strong_bound);
  }
  EXPECT_GT(seen, 0U);
}

TEST(Explore, GeneratorReachesNontrivialLowerMinors) {
  const auto rep = explore(config(Question::q1, 300, 3, 16));
  std::size_t differing = 0;
  for (const auto& r : rep.records) differing += r.outcome.weak_bound != r.outcome.strong_bound;
  EXPECT_GT(differing, 0U);
}

TEST(Explore, AbelianActorsGiveNoViolations) {
  auto c = config(Question::q4, 200, 17, 8);
  c.abelian_actor = true;
  const auto rep = explore(c);
  EXPECT_EQ(rep.violations, 0U);
  for (const auto& r : rep.records) EXPECT_TRUE(r.outcome.strong_divides);
}

TEST(Explore, SummaryWording) {
  const auto j = exploration_to_json(explore(config(Question::q1, 25, 1)));
  EXPECT_EQ(j.at("schema"), "divisor-lab/1");
  EXPECT_EQ(j.at("records").size(), 25U);
  const auto& s = j.at("summary");
  if (s.at("violations") == 0) {
    EXPECT_EQ(s.at("statement"), "no counterexample found in 25 trials");
    EXPECT_TRUE(s.at("violating_instances").empty());
  } else {
    EXPECT_EQ(s.at("violating_instances").size(), s.at("violations").get<std::size_t>());
  }
}

TEST(Explore, BadConfig) {
  EXPECT_THROW(explore(config(Question::q1, 0, 1)), Error);
  EXPECT_THROW(parse_question("Q5"), Error);
  EXPECT_EQ(parse_question("q3"), Question::q3);
}
