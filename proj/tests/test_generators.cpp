#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pmd/generators.hpp"
#include "pmd/rules.hpp"

using namespace pmd;

TEST(MarginFunction, Validation) {
  MarginFunction f(3);
  EXPECT_THROW(f.set(0, 1, 3), ConfigurationError);
  EXPECT_THROW(f.set(1, 1, 2), ConfigurationError);
  EXPECT_THROW(MarginFunction::from_matrix({{0, 2}, {2, 0}}), ConfigurationError);
  EXPECT_THROW(MarginFunction::from_matrix({{0, 1}, {-1, 0}}), ConfigurationError);
  EXPECT_THROW(MarginFunction::from_matrix({{2, 0}, {0, 0}}), ConfigurationError);
  EXPECT_NO_THROW(MarginFunction::from_matrix({{0, -4}, {4, 0}}));
}

TEST(McGarvey, SinglePair) {
  MarginFunction f(3);
  f.set(0, 1, 2);
  const auto b = mcgarvey_profile(f);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0], Preference({0, 1, 2}));
  EXPECT_EQ(b[1], Preference({2, 0, 1}));
  const auto g = majority_graph(mcgarvey_election(f));
  EXPECT_EQ(g.margin(0, 1), 2);
  EXPECT_EQ(g.margin(0, 2), 0);
  EXPECT_EQ(g.margin(1, 2), 0);
}

TEST(McGarvey, ZeroAndCycle) {
  EXPECT_TRUE(mcgarvey_profile(MarginFunction(4)).empty());
  MarginFunction f(3);
  f.set(0, 1, 2);
  f.set(1, 2, 2);
  f.set(2, 0, 2);
  const auto b = mcgarvey_profile(f);
  EXPECT_EQ(b.size(), 6u);
  const WeightedMajorityGraph g(3, b);
  EXPECT_EQ(g.margin(0, 1), 2);
  EXPECT_EQ(g.margin(1, 2), 2);
  EXPECT_EQ(g.margin(2, 0), 2);
}

TEST(McGarvey, RandomTargetsRoundTrip) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + rng() % 4;
    MarginFunction f(m);
    Score total = 0;
    for (CandidateId a = 0; a < m; ++a)
      for (CandidateId b = a + 1; b < m; ++b) {
        const Score v = 2 * (static_cast<Score>(rng() % 7) - 3);
        f.set(a, b, v);
        total += std::abs(v);
      }
    const auto ballots = mcgarvey_profile(f);
    EXPECT_EQ(static_cast<Score>(ballots.size()), total);
    const WeightedMajorityGraph g(m, ballots);
    for (CandidateId a = 0; a < m; ++a)
      for (CandidateId b = 0; b < m; ++b) EXPECT_EQ(g.margin(a, b), f(a, b));
  }
}

TEST(RandomProfile, Deterministic) {
  EXPECT_EQ(random_profile(3, 5, 7), random_profile(3, 5, 7));
  EXPECT_NE(random_profile(3, 5, 7).ballots(), random_profile(3, 5, 8).ballots());
  const auto one = random_profile(1, 4, 3);
  EXPECT_EQ(one.voter_count(), 4u);
  EXPECT_THROW(random_profile(0, 4, 3), ConfigurationError);
}

TEST(RandomProfile, TopRanksAreUniform) {
  const std::size_t m = 4, n = 10000;
  const auto e = random_profile(m, n, 2024);
  const auto plur = evaluate_scores(e, ScoringVector::plurality(m));
  const double mean = static_cast<double>(n) / m;
  const double sigma = std::sqrt(n * (1.0 / m) * (1 - 1.0 / m));
  for (auto s : plur.values) EXPECT_LT(std::abs(static_cast<double>(s) - mean), 5 * sigma);
}

TEST(X3C, RosterSizeAndWinner) {
  const X3CInstance tiny{3, {{1, 2, 3}}};
  const auto t = x3c_to_stv(tiny);
  EXPECT_EQ(t.election.candidate_count(), 11u);
  EXPECT_EQ(t.suspect, t.election.voter_count() - 1);
  EXPECT_EQ(t.election.ballot(t.suspect).top(), t.x);
  EXPECT_EQ(t.election.tiebreak().order()[10], t.x);

  const X3CInstance no_cover{6, {{1, 2, 3}, {1, 2, 4}}};
  const auto h = x3c_to_stv(no_cover);
  EXPECT_EQ(h.election.candidate_count(), 5u * 2 + 6 + 3);
  EXPECT_EQ(winner(h.election, VotingRule::stv()), h.x);
}

TEST(X3C, CoverWitnessElectsY) {
  const X3CInstance inst{6, {{1, 2, 3}, {4, 5, 6}, {1, 4, 5}}};
  const auto h = x3c_to_stv(inst);
  const auto rule = VotingRule::stv();
  ASSERT_EQ(winner(h.election, rule), h.x);
  const std::vector<std::size_t> cover{0, 1};
  const Preference w = x3c_cover_witness(inst, cover);
  EXPECT_TRUE(w.prefers(h.x, h.y));
  const auto replay = h.election.replaced(std::span(&h.suspect, 1), std::span(&w, 1));
  EXPECT_EQ(winner(replay, rule), h.y);
}

TEST(X3C, Validation) {
  EXPECT_THROW(x3c_to_stv({4, {{1, 2, 3}}}), ConfigurationError);
  EXPECT_THROW(x3c_to_stv({3, {{1, 1, 2}}}), ConfigurationError);
  EXPECT_THROW(x3c_to_stv({3, {{1, 2, 4}}}), ConfigurationError);
  EXPECT_THROW(x3c_to_stv({3, {}}), ConfigurationError);
}
