#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "naive.hpp"
#include "pmd/dispatch.hpp"
#include "pmd/generators.hpp"
#include "pmd/oracle.hpp"

using namespace pmd;

namespace {
const VotingRule kBorda3 = VotingRule::scoring(ScoringVector::borda(3));
const std::vector<VoterIndex> kFirst{0};
}  // namespace

TEST(Oracle, AdmissiblePreferences) {
  const auto p = detail::admissible_preferences(4, 1, 3);
  EXPECT_EQ(p.size(), 12u);
  for (const auto& q : p) EXPECT_TRUE(q.prefers(1, 3));
  EXPECT_TRUE(std::is_sorted(p.begin(), p.end()));
}

TEST(Oracle, SpecExamples) {
  const auto e1 = fixtures::e1();
  auto v = oracle_cpmw(e1, kBorda3, kFirst, 1);
  ASSERT_TRUE(v.yes);
  EXPECT_EQ(v.witness.at(0).preference, fixtures::pref(e1, "a>b>c"));
  EXPECT_EQ(v.route, Route::exhaustive);
  EXPECT_FALSE(oracle_cpmw(fixtures::e2(), kBorda3, kFirst, 1).yes);
  const auto e6 = fixtures::e6();
  v = oracle_cpmw(e6, VotingRule::maximin(), kFirst, 2);
  ASSERT_TRUE(v.yes);
  EXPECT_EQ(v.witness.at(0).preference, fixtures::pref(e6, "a>y>b"));
  EXPECT_TRUE(oracle_cpm(fixtures::e4(), VotingRule::bucklin(), kFirst).yes);
  const ElectionInstance single({"a"}, {Preference::identity(1)});
  EXPECT_FALSE(oracle_cpm(single, VotingRule::stv(), kFirst).yes);
}

TEST(Oracle, StvE1MatchesNaive) {
  const auto e1 = fixtures::e1();
  const auto rule = VotingRule::stv();
  const auto v = oracle_cpm(e1, rule, kFirst);
  EXPECT_EQ(v.yes, naive::cpm(e1, rule, {0}));
  EXPECT_TRUE(verify_witness(e1, rule, v));
}

TEST(Oracle, WitnessIsLexFirstCombination) {
  const auto rule = VotingRule::scoring(ScoringVector::borda(3));
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto e = random_profile(3, 4, seed);
    const CandidateId x = winner(e, rule);
    const std::vector<VoterIndex> m{1, 3};
    for (CandidateId y = 0; y < 3; ++y) {
      if (y == x) continue;
      const auto v = oracle_cpmw(e, rule, m, y);
      if (!v.yes) continue;
      // no lexicographically smaller pair works
      const auto prefs = detail::admissible_preferences(3, x, y);
      const Preference& p0 = v.witness[0].preference;
      const Preference& p1 = v.witness[1].preference;
      for (const auto& a : prefs)
        for (const auto& b : prefs) {
          if (std::pair(a, b) >= std::pair(p0, p1)) continue;
          const std::vector<Preference> sub{a, b};
          EXPECT_NE(winner(e.replaced(m, sub), rule), y);
        }
    }
  }
}

TEST(Oracle, BudgetIsEnforced) {
  const auto e = random_profile(6, 6, 1);
  const auto rule = VotingRule::stv();
  const std::vector<VoterIndex> m{0, 1, 2, 3};
  const CandidateId x = winner(e, rule);
  const CandidateId y = x == 0 ? 1 : 0;
  try {
    oracle_cpmw(e, rule, m, y);
    FAIL() << "expected BudgetExceededError";
  } catch (const BudgetExceededError& err) {
    EXPECT_GT(err.required(), 1e7);
  }
  SearchBudget tiny{10, false};
  EXPECT_THROW(oracle_cpmw(e, rule, kFirst, y, tiny), BudgetExceededError);
  EXPECT_NO_THROW(oracle_cpmw(e, rule, kFirst, y, SearchBudget{10, true}));
}

TEST(Oracle, AllSmallInstancesMatchNaive) {
  const std::vector<VotingRule> rules{kBorda3, VotingRule::maximin(), VotingRule::bucklin(),
                                      VotingRule::stv()};
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto e = random_profile(3, 2 + seed % 3, seed);
    for (const auto& r : rules) {
      const std::vector<VoterIndex> m{0, 1};
      ASSERT_EQ(oracle_cpm(e, r, m).yes, naive::cpm(e, r, {0, 1})) << r.name() << seed;
    }
  }
}

TEST(SearchCoalitions, SpecExamples) {
  auto r = search_coalitions(fixtures::e1(), kBorda3, 1, CandidateId{1});
  ASSERT_TRUE(r.verdict.yes);
  EXPECT_EQ(r.verdict.coalition, (std::vector<VoterIndex>{0}));
  EXPECT_FALSE(search_coalitions(fixtures::e1(), kBorda3, 0, CandidateId{1}).verdict.yes);
  EXPECT_FALSE(search_coalitions(fixtures::e2(), kBorda3, 2, std::nullopt).verdict.yes);
}

TEST(SearchCoalitions, ExhaustListsMinimalHits) {
  const auto e = fixtures::e5();
  SearchOptions o;
  o.exhaust = true;
  const auto r = search_coalitions(e, kBorda3, 3, CandidateId{1}, o);
  ASSERT_TRUE(r.verdict.yes);
  for (std::size_t i = 0; i < r.minimal_coalitions.size(); ++i)
    for (std::size_t j = 0; j < r.minimal_coalitions.size(); ++j) {
      if (i == j) continue;
      const auto& a = r.minimal_coalitions[i];
      const auto& b = r.minimal_coalitions[j];
      EXPECT_FALSE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
}

TEST(SearchCoalitions, BudgetIsEnforced) {
  const auto e = random_profile(3, 200, 3);
  SearchOptions o;
  o.budget.max_replays = 1000;
  const CandidateId x = winner(e, kBorda3);
  EXPECT_THROW(search_coalitions(e, kBorda3, 3, CandidateId{x == 0 ? 1u : 0u}, o),
               BudgetExceededError);
}

TEST(Dispatch, RoutesByRule) {
  const auto e1 = fixtures::e1();
  DetectionQuery q{{0}, CandidateId{1}, std::nullopt};
  EXPECT_EQ(detect(e1, kBorda3, q).route, Route::polynomial);
  q.actual_winner = 0;
  EXPECT_EQ(detect(e1, VotingRule::stv(), q).route, Route::exhaustive);
  EXPECT_EQ(detect(fixtures::e6(), VotingRule::maximin(), {{0}, CandidateId{2}, {}}).route,
            Route::polynomial);
  EXPECT_EQ(detect(fixtures::e6(), VotingRule::maximin(), {{0, 1}, CandidateId{2}, {}}).route,
            Route::exhaustive);
  EXPECT_EQ(detect(fixtures::e4(), VotingRule::bucklin(), {{0, 1}, std::nullopt, {}}).route,
            Route::polynomial);
  const DetectionQuery s{{}, std::nullopt, 2};
  EXPECT_EQ(s.problem(), Problem::cpms);
  EXPECT_FALSE(detect(fixtures::e2(), kBorda3, s).yes);
}

TEST(Dispatch, SearchMatchesOracleAcrossRules) {
  const std::vector<VotingRule> rules{VotingRule::maximin(), VotingRule::bucklin(),
                                      VotingRule::stv()};
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto e = random_profile(3, 4, seed + 500);
    for (const auto& r : rules) {
      const auto fast = detect_cpms(e, r, 2);
      const auto slow = search_coalitions(e, r, 2, std::nullopt).verdict;
      ASSERT_EQ(fast.yes, slow.yes) << r.name() << seed;
      EXPECT_TRUE(verify_witness(e, r, fast));
    }
  }
}
