#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "pmd/election.hpp"
#include "pmd/generators.hpp"

using namespace pmd;

TEST(Preference, RejectsNonPermutations) {
  EXPECT_THROW(Preference({0, 0, 1}), RosterError);
  EXPECT_THROW(Preference({0, 2}), RosterError);
  EXPECT_THROW(Preference({1, 2, 3}), RosterError);
  EXPECT_NO_THROW(Preference({2, 0, 1}));
}

TEST(Preference, CorruptedBallotsAreRejected) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CandidateId> r{0, 1, 2, 3, 4};
    std::shuffle(r.begin(), r.end(), rng);
    const std::size_t i = rng() % 5, j = (i + 1 + rng() % 4) % 5;
    r[i] = r[j];  // duplicate one entry, drop another
    EXPECT_THROW(Preference{r}, RosterError);
  }
}

TEST(Preference, PositionOfIsOneBased) {
  const Preference p({0, 2, 1});  // a>c>b
  EXPECT_EQ(position_of(p, 0), 1u);
  EXPECT_EQ(position_of(p, 1), 3u);
  EXPECT_EQ(position_of(p, 2), 2u);
  EXPECT_THROW(position_of(p, 3), RosterError);
  EXPECT_TRUE(p.prefers(2, 1));
  EXPECT_FALSE(p.prefers(1, 0));
}

TEST(ElectionInstance, Validation) {
  EXPECT_THROW(ElectionInstance({}, {Preference::identity(0)}), RosterError);
  EXPECT_THROW(ElectionInstance({"a", "a"}, {Preference::identity(2)}), RosterError);
  EXPECT_THROW(ElectionInstance({"a", ""}, {Preference::identity(2)}), RosterError);
  EXPECT_THROW(ElectionInstance({"a", "b"}, {}), RosterError);
  EXPECT_THROW(ElectionInstance({"a", "b"}, {Preference::identity(3)}), RosterError);
  EXPECT_THROW(ElectionInstance({"a", "b"}, {Preference::identity(2)},
                                TieBreakOrder(Preference::identity(3))),
               RosterError);
  const ElectionInstance single({"a"}, {Preference::identity(1)});
  EXPECT_EQ(single.candidate_count(), 1u);
}

TEST(ElectionInstance, DefaultTiebreakIsRosterOrder) {
  const auto e = fixtures::e1();
  EXPECT_EQ(e.tiebreak().order(), Preference::identity(3));
  EXPECT_EQ(e.id_of("c"), 2u);
  EXPECT_THROW(e.id_of("zz"), RosterError);
}

TEST(ElectionInstance, ReplacedSwapsOnlyGivenBallots) {
  const auto e = fixtures::e1();
  const VoterIndex v = 0;
  const Preference p({0, 1, 2});
  const auto r = e.replaced(std::span(&v, 1), std::span(&p, 1));
  EXPECT_EQ(r.ballot(0), p);
  EXPECT_EQ(r.ballot(1), e.ballot(1));
  EXPECT_EQ(e.ballot(0), Preference({0, 2, 1}));
}

TEST(Margins, E1Values) {
  const auto e = fixtures::e1();
  EXPECT_EQ(pairwise_margin(e, 0, 1), -1);
  EXPECT_EQ(pairwise_margin(e, 0, 2), 3);
  EXPECT_EQ(pairwise_margin(e, 1, 2), 1);
  EXPECT_EQ(pairwise_margin(e, 0, 0), 0);
  EXPECT_THROW(pairwise_margin(e, 0, 5), RosterError);
}

TEST(Margins, SingleAndOppositeBallots) {
  const ElectionInstance one({"a", "b", "c"}, {Preference({0, 1, 2})});
  const auto g = majority_graph(one);
  EXPECT_EQ(g.margin(0, 1), 1);
  EXPECT_EQ(g.margin(0, 2), 1);
  EXPECT_EQ(g.margin(1, 2), 1);
  const ElectionInstance two({"a", "b", "c"}, {Preference({0, 1, 2}), Preference({2, 1, 0})});
  const auto h = majority_graph(two);
  for (CandidateId a = 0; a < 3; ++a)
    for (CandidateId b = 0; b < 3; ++b) EXPECT_EQ(h.margin(a, b), 0);
}

TEST(Margins, AntisymmetryAndParityOnRandomProfiles) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto e = random_profile(2 + seed % 5, 1 + seed % 9, seed);
    const auto g = majority_graph(e);
    const auto n = static_cast<Score>(e.voter_count());
    for (CandidateId a = 0; a < e.candidate_count(); ++a) {
      EXPECT_EQ(g.margin(a, a), 0);
      for (CandidateId b = 0; b < e.candidate_count(); ++b) {
        EXPECT_EQ(g.margin(a, b), -g.margin(b, a));
        EXPECT_EQ(pairwise_margin(e, a, b) + pairwise_margin(e, b, a), 0);
        if (a != b) {
          EXPECT_LE(std::abs(g.margin(a, b)), n);
          EXPECT_EQ((g.margin(a, b) - n) % 2, 0);
        }
      }
    }
  }
}
