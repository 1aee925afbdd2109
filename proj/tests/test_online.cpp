#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "iidmatch/online_baselines.hpp"
#include "oracles.hpp"

using namespace iidmatch;

namespace {

// l1:{r1}, l2:{r1,r2}, l3:{r2}, written 0-based.
TypeGraph chain() { return TypeGraph::from_edges(3, 2, {{0, 0}, {1, 0}, {1, 1}, {2, 1}}, 3); }

std::vector<int> identity_ranks(int n) {
  std::vector<int> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = i;
  return r;
}

}  // namespace

TEST(SampleInstance, TypeFrequenciesAreUniform) {
  TypeGraph tg;
  tg.left_count = 10;
  tg.right_count = 1;
  tg.adj.assign(10, {0});
  tg.m = 100000;
  const auto counts = type_counts(sample_instance(tg, 5));
  const double sd = std::sqrt(1e5 * 0.1 * 0.9);
  for (int c : counts) EXPECT_LT(std::fabs(c - 1e4), 3 * sd);
}

TEST(SampleInstance, SameSeedSameStream) {
  const auto tg = chain();
  EXPECT_EQ(sample_instance(tg, 9).arrivals, sample_instance(tg, 9).arrivals);
}

TEST(SimpleGreedy, ChainWithMiddleTypeFirst) {
  const auto tg = chain();
  const InstanceStream inst{&tg, {1, 0, 2}, 0};
  const auto m = simple_greedy(inst);
  EXPECT_EQ(m.right_of(0), 0);
  EXPECT_EQ(m.right_of(1), kNone);
  EXPECT_EQ(m.right_of(2), 1);
  EXPECT_EQ(m.size(), 2u);
}

TEST(SimpleGreedy, MatchesStepOracle) {
  Rng rng(3);
  for (int it = 0; it < 300; ++it) {
    const auto tg = oracle::random_type_graph(7, 6, 0.35, rng, 9);
    const auto inst = sample_instance(tg, rng.next());
    std::vector<int> picks;
    const int want = oracle::step_greedy(tg, inst.arrivals, identity_ranks(6), &picks);
    const auto m = simple_greedy(inst);
    ASSERT_EQ(static_cast<int>(m.size()), want);
    for (std::size_t i = 0; i < picks.size(); ++i) ASSERT_EQ(m.right_of(static_cast<int>(i)), picks[i] < 0 ? kNone : picks[i]);
  }
}

TEST(GreedyProperty, HoldsForEveryBaseline) {
  Rng rng(4);
  for (int it = 0; it < 200; ++it) {
    const auto tg = oracle::random_type_graph(8, 8, 0.25, rng, 12);
    const auto inst = sample_instance(tg, rng.next());
    const auto sigma = Permutation::identity(tg.right_count);
    for (const auto& m : {simple_greedy(inst), ranking(inst, rng), category_advice(inst, sigma), three_pass(inst, sigma)}) {
      ASSERT_FALSE(audit_matching(m, inst));
      // Replaying in arrival order, an unmatched arrival must have seen no free neighbor.
      std::vector<bool> taken(static_cast<std::size_t>(tg.right_count), false);
      for (std::size_t i = 0; i < inst.size(); ++i) {
        const int r = m.right_of(static_cast<int>(i));
        if (r == kNone) {
          for (int x : inst.neighbors_of_arrival(i)) ASSERT_TRUE(taken[static_cast<std::size_t>(x)]);
        } else {
          taken[static_cast<std::size_t>(r)] = true;
        }
      }
    }
  }
}

TEST(Ranking, PermutationIsUniform) {
  Rng rng(8);
  std::map<std::vector<int>, int> freq;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) freq[Permutation::uniform(4, rng).order()]++;
  ASSERT_EQ(freq.size(), 24u);
  const double p = 1.0 / 24, sd = std::sqrt(trials * p * (1 - p));
  for (const auto& [perm, c] : freq) EXPECT_LT(std::fabs(c - trials * p), 4 * sd);
}

TEST(CategoryAdvice, ChainWithIdentity) {
  const auto tg = chain();
  const InstanceStream inst{&tg, {1, 0, 2}, 0};
  const auto sigma = Permutation::identity(2);
  EXPECT_EQ(category_advice(inst, sigma).size(), 2u);
  EXPECT_EQ(three_pass(inst, sigma).size(), 2u);
}

TEST(CategoryAdvice, PrefersNodesMissedByFirstPass) {
  // Arrivals: type 0 {r0, r1}, then type 1 {r0}. Pass one gives r0 to the
  // first arrival; the second pass ranks r1 first and matches both.
  const auto tg = TypeGraph::from_edges(2, 2, {{0, 0}, {0, 1}, {1, 0}}, 2);
  const InstanceStream inst{&tg, {0, 1}, 0};
  const auto sigma = Permutation::identity(2);
  EXPECT_EQ(simple_greedy(inst).size(), 1u);
  const auto m = category_advice(inst, sigma);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.right_of(0), 1);
}

TEST(ThreePass, NeverWorseThanCategoryAdvice) {
  Rng rng(5);
  for (int it = 0; it < 1000; ++it) {
    const auto tg = oracle::random_type_graph(8, 8, 0.3, rng, 10);
    const auto inst = sample_instance(tg, rng.next());
    const auto sigma = Permutation::uniform(tg.right_count, rng);
    ASSERT_GE(three_pass(inst, sigma).size(), category_advice(inst, sigma).size()) << "instance " << it;
  }
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation::from_ranks({0, 0}), std::invalid_argument);
  EXPECT_THROW(Permutation::from_order({1, 2}), std::invalid_argument);
}

TEST(SuggestionList, CapacityIsThree) {
  SuggestionList s{1, 2, 3};
  EXPECT_THROW(s.push_back(4), std::length_error);
}
