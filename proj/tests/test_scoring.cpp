#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "naive.hpp"
#include "pmd/detect_scoring.hpp"
#include "pmd/generators.hpp"

using namespace pmd;
using fixtures::pref;

namespace {
const VotingRule kBorda3 = VotingRule::scoring(ScoringVector::borda(3));
const std::vector<VoterIndex> kFirst{0};
}  // namespace

TEST(CanonicalPreference, Examples) {
  const TieBreakOrder tb(Preference::identity(3));
  const ScoreTable ext{{2, 4, 0}};  // E1 without v1
  EXPECT_EQ(canonical_manipulated_preference(ext, 0, 1, 2, tb), Preference({2, 0, 1}));
  EXPECT_EQ(canonical_manipulated_preference(ext, 0, 1, 1, tb), Preference({0, 1, 2}));
  EXPECT_THROW(canonical_manipulated_preference(ext, 0, 1, 3, tb), InvalidQueryError);
  EXPECT_THROW(canonical_manipulated_preference(ext, 0, 1, 0, tb), InvalidQueryError);
  // w, x, y, z with w = 5, z = 0
  const ScoreTable four{{5, 3, 3, 0}};
  EXPECT_EQ(canonical_manipulated_preference(four, 1, 2, 1, TieBreakOrder(Preference::identity(4))),
            Preference({1, 2, 3, 0}));
}

TEST(CanonicalPreference, EqualScoresPutTieLoserHigher) {
  const ScoreTable ext{{0, 0, 1, 1}};
  const TieBreakOrder tb(Preference::identity(4));
  EXPECT_EQ(canonical_manipulated_preference(ext, 0, 1, 1, tb), Preference({0, 1, 3, 2}));
}

TEST(CpmwScoringSingle, SpecExamples) {
  const auto e1 = fixtures::e1();
  auto v = cpmw_scoring_single(e1, kBorda3, 0, 1);
  ASSERT_TRUE(v.yes);
  EXPECT_EQ(v.witness.at(0).preference, pref(e1, "a>b>c"));
  EXPECT_TRUE(verify_witness(e1, kBorda3, v));
  EXPECT_FALSE(cpmw_scoring_single(fixtures::e2(), kBorda3, 0, 1).yes);
  EXPECT_THROW(cpmw_scoring_single(e1, kBorda3, 0, 0), InvalidQueryError);
  EXPECT_THROW(cpmw_scoring_single(e1, VotingRule::maximin(), 0, 1), InvalidQueryError);
}

TEST(CpmwScoringCoalition, SpecExamples) {
  const auto e5 = fixtures::e5();
  const std::vector<VoterIndex> m{0, 1};
  auto v = cpmw_scoring_coalition(e5, kBorda3, m, 1);
  ASSERT_TRUE(v.yes);
  for (const auto& w : v.witness) EXPECT_EQ(w.preference, pref(e5, "a>b>c"));
  EXPECT_TRUE(cpmw_scoring_coalition(fixtures::e1(), kBorda3, kFirst, 1).yes);
  EXPECT_FALSE(cpmw_scoring_coalition(fixtures::e2(), kBorda3, kFirst, 2).yes);
}

TEST(CpmwScoringCoalition, NonConvexFallsBack) {
  const auto rule = VotingRule::scoring(ScoringVector({5, 1, 0}));
  const std::vector<VoterIndex> m{0, 1};
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto e = random_profile(3, 4, seed);
    const CandidateId x = winner(e, rule);
    for (CandidateId y = 0; y < 3; ++y) {
      if (y == x) continue;
      const auto v = cpmw_scoring_coalition(e, rule, m, y);
      EXPECT_EQ(v.route, Route::fallback);
      EXPECT_EQ(v.yes, naive::cpmw(e, rule, {0, 1}, static_cast<int>(y)));
    }
  }
}

TEST(CpmwPluralityCoalition, SpecExamples) {
  const auto e = parse_election("candidates: a,b,c\n3x a>b>c\n2x b>a>c\n");
  const auto rule = VotingRule::scoring(ScoringVector::plurality(3));
  const std::vector<VoterIndex> two{0, 1};
  const auto v = cpmw_plurality_coalition(e, rule, two, 1);
  ASSERT_TRUE(v.yes);
  for (const auto& w : v.witness) EXPECT_EQ(w.preference.top(), 2u);
  EXPECT_TRUE(verify_witness(e, rule, v));
  EXPECT_FALSE(cpmw_plurality_coalition(e, rule, kFirst, 1).yes);
}

TEST(CpmwPluralityCoalition, TwoCandidates) {
  const auto e = parse_election("candidates: x,y\n3x x>y\ny>x\n");
  const auto rule = VotingRule::scoring(ScoringVector::plurality(2));
  const std::vector<VoterIndex> m{0, 1};
  EXPECT_FALSE(cpmw_plurality_coalition(e, rule, m, 1).yes);
}

TEST(CpmsScoringGreedy, SpecExamples) {
  const auto e1 = fixtures::e1();
  auto v = cpmsw_scoring_greedy(e1, kBorda3, 1, 1);
  ASSERT_TRUE(v.yes);
  EXPECT_EQ(v.coalition, (std::vector<VoterIndex>{0}));
  EXPECT_FALSE(cpmsw_scoring_greedy(e1, kBorda3, 1, 0).yes);
  EXPECT_FALSE(cpmsw_scoring_greedy(fixtures::e2(), kBorda3, 2, 3).yes);
  EXPECT_THROW(cpmsw_scoring_greedy(e1, VotingRule::scoring(ScoringVector({5, 1, 0})), 1, 1),
               InvalidQueryError);
}

TEST(CpmScoring, Wrappers) {
  EXPECT_TRUE(cpm_scoring(fixtures::e1(), kBorda3, kFirst).yes);
  EXPECT_FALSE(cpm_scoring(fixtures::e2(), kBorda3, kFirst).yes);
  const ElectionInstance single({"a"}, {Preference::identity(1)});
  EXPECT_FALSE(cpm_scoring(single, VotingRule::scoring(ScoringVector::plurality(1)), kFirst).yes);
}

TEST(CpmsScoring, MonotoneInBound) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto e = random_profile(4, 6, seed);
    const auto rule = VotingRule::scoring(ScoringVector::borda(4));
    const CandidateId x = winner(e, rule);
    for (CandidateId y = 0; y < 4; ++y) {
      if (y == x) continue;
      bool seen = false;
      for (std::size_t k = 0; k <= 6; ++k) {
        const bool yes = cpmsw_scoring(e, rule, y, k).yes;
        if (seen) {
          EXPECT_TRUE(yes) << "seed " << seed << " k " << k;
        }
        seen = seen || yes;
      }
    }
  }
}

TEST(CpmsScoring, PluralityClosedFormMatchesSubsetSearch) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto e = random_profile(3 + seed % 2, 5, seed);
    const auto rule = VotingRule::scoring(ScoringVector::plurality(e.candidate_count()));
    const CandidateId x = winner(e, rule);
    for (CandidateId y = 0; y < e.candidate_count(); ++y) {
      if (y == x) continue;
      for (std::size_t k = 0; k <= 3; ++k) {
        const auto fast = cpmsw_plurality_search(e, rule, y, k);
        const auto slow = search_coalitions(e, rule, k, y).verdict;
        ASSERT_EQ(fast.yes, slow.yes) << "seed " << seed << " y " << y << " k " << k;
        EXPECT_TRUE(verify_witness(e, rule, fast));
      }
    }
  }
}

// Swapping two non-{x,y} candidates of a YES witness, where the upper one
// has the strictly larger external score, keeps it a witness.
TEST(CanonicalPreference, InterchangePreservesWitness) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto e = random_profile(5, 5, seed);
    const auto rule = VotingRule::scoring(ScoringVector::borda(5));
    const CandidateId x = winner(e, rule);
    const ReplayContext ctx(e, rule, kFirst);
    const auto& ext = ctx.external_scores();
    for (CandidateId y = 0; y < 5; ++y) {
      if (y == x) continue;
      const auto v = oracle_cpmw(e, rule, kFirst, y);
      if (!v.yes) continue;
      const Preference& w = v.witness[0].preference;
      for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = i + 1; j < 5; ++j) {
          const CandidateId a = w[i], b = w[j];
          if (a == x || a == y || b == x || b == y || ext[a] <= ext[b]) continue;
          std::vector<CandidateId> r(w.ranking().begin(), w.ranking().end());
          std::swap(r[i], r[j]);
          const Preference swapped(r);
          EXPECT_EQ(ctx.winner(std::span(&swapped, 1)), y);
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 0u);
}
