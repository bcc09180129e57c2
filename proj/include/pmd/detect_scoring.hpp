#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "pmd/detection.hpp"
#include "pmd/oracle.hpp"

namespace pmd {

/// Ballot with x at position j (1-based), y at j+1 and every other candidate
/// in nondecreasing order of external score from the top. Among equal
/// external scores the tie-break-later candidate sits higher: the higher slot
/// is then given to the candidate that loses ties.
inline Preference canonical_manipulated_preference(const ScoreTable& external, CandidateId x,
                                                   CandidateId y, std::size_t j,
                                                   const TieBreakOrder& tb) {
  const std::size_t m = external.size();
  if (x == y) throw InvalidQueryError("x and y must differ");
  if (x >= m || y >= m) throw RosterError("candidate id outside the score table");
  if (j < 1 || j + 1 > m) {
    throw InvalidQueryError("position j=" + std::to_string(j) + " outside 1.." +
                            std::to_string(m - 1));
  }
  std::vector<CandidateId> others;
  for (CandidateId c = 0; c < m; ++c)
    if (c != x && c != y) others.push_back(c);
  std::sort(others.begin(), others.end(), [&](CandidateId a, CandidateId b) {
    if (external[a] != external[b]) return external[a] < external[b];
    return tb.prefers(b, a);
  });
  std::vector<CandidateId> ranking;
  ranking.reserve(m);
  auto it = others.begin();
  for (std::size_t pos = 1; pos <= m; ++pos) {
    if (pos == j) ranking.push_back(x);
    else if (pos == j + 1) ranking.push_back(y);
    else ranking.push_back(*it++);
  }
  return Preference(std::move(ranking));
}

/// Single suspect, any scoring rule: tries the m-1 canonical ballots.
inline DetectionVerdict cpmw_scoring_single(const ElectionInstance& e, const VotingRule& rule,
                                            VoterIndex suspect, CandidateId y) {
  rule.scoring_vector();
  rule.check_applicable(e.candidate_count());
  const CandidateId x = winner(e, rule);
  check_actual_winner(e, x, y);
  const auto suspects = normalize_suspects(e, std::span<const VoterIndex>(&suspect, 1));
  const ReplayContext ctx(e, rule, suspects);
  const ScoreTable ext{ctx.external_scores()};

  DetectionVerdict v;
  v.current_winner = x;
  v.coalition = suspects;
  for (std::size_t j = 1; j < e.candidate_count(); ++j) {
    Preference p = canonical_manipulated_preference(ext, x, y, j, e.tiebreak());
    ++v.replays;
    if (ctx.winner(std::span<const Preference>(&p, 1)) == y) {
      v.yes = true;
      v.actual_winner = y;
      v.witness = {{suspect, std::move(p)}};
      return v;
    }
  }
  return v;
}

namespace detail {

/// x first, y second, everyone else in the reported relative order.
inline Preference lift_pair(const Preference& reported, CandidateId x, CandidateId y) {
  std::vector<CandidateId> r{x, y};
  r.reserve(reported.size());
  for (auto c : reported.ranking())
    if (c != x && c != y) r.push_back(c);
  return Preference(std::move(r));
}

inline std::vector<Score> plurality_tops(const ElectionInstance& e,
                                         std::span<const VoterIndex> excluded) {
  std::vector<char> skip(e.voter_count(), 0);
  for (auto v : excluded) skip[v] = 1;
  std::vector<Score> tops(e.candidate_count(), 0);
  for (VoterIndex i = 0; i < e.voter_count(); ++i)
    if (!skip[i]) ++tops[e.ballot(i).top()];
  return tops;
}

}  // namespace detail

/// Plurality-equivalent rules, any coalition. A suspect can never top y, so
/// y ends with its non-suspect count; every other candidate z may absorb
/// cap(z) = allowed(z) - base(z) suspect tops, and the suspects fit iff all
/// caps are non-negative and they sum to at least |M|.
inline DetectionVerdict cpmw_plurality_coalition(const ElectionInstance& e,
                                                 const VotingRule& rule,
                                                 std::span<const VoterIndex> suspects,
                                                 CandidateId y) {
  if (!rule.scoring_vector().is_plurality_like()) {
    throw InvalidQueryError("rule '" + rule.name() + "' is not plurality");
  }
  rule.check_applicable(e.candidate_count());
  const CandidateId x = winner(e, rule);
  check_actual_winner(e, x, y);
  const auto m_set = normalize_suspects(e, suspects);
  const auto& tb = e.tiebreak();
  const std::size_t m = e.candidate_count();
  const auto base = detail::plurality_tops(e, m_set);

  DetectionVerdict v;
  v.current_winner = x;
  v.coalition = m_set;
  std::vector<Score> cap(m, 0);
  Score total = 0;
  for (CandidateId z = 0; z < m; ++z) {
    if (z == y) continue;
    const Score allowed = base[y] - 1 + (tb.prefers(y, z) ? 1 : 0);
    cap[z] = allowed - base[z];
    if (cap[z] < 0) return v;
    total += cap[z];
  }
  if (total < static_cast<Score>(m_set.size())) return v;

  // x first so that ballots stay x > y > ... where possible
  std::vector<CandidateId> sinks{x};
  for (auto c : tb.order().ranking())
    if (c != x && c != y) sinks.push_back(c);
  std::size_t s = 0;
  for (auto voter : m_set) {
    while (cap[sinks[s]] == 0) ++s;
    const CandidateId z = sinks[s];
    --cap[z];
    std::vector<CandidateId> head;
    if (z != x) head.push_back(z);
    head.push_back(x);
    head.push_back(y);
    v.witness.push_back({voter, complete_in_tiebreak_order(e, std::move(head))});
  }
  v.yes = true;
  v.actual_winner = y;
  v.replays = 0;
  return v;
}

/// Any scoring rule with alpha_1 - alpha_2 <= alpha_i - alpha_{i+1}: the
/// suspects' best move is to rank x first and y second. Rules outside that
/// class are routed to the plurality method or the exact oracle and the
/// verdict is marked as a fallback.
inline DetectionVerdict cpmw_scoring_coalition(const ElectionInstance& e,
                                               const VotingRule& rule,
                                               std::span<const VoterIndex> suspects,
                                               CandidateId y, const SearchBudget& budget = {}) {
  const auto& alpha = rule.scoring_vector();
  rule.check_applicable(e.candidate_count());
  if (!alpha.is_convex()) {
    auto v = alpha.is_plurality_like() ? cpmw_plurality_coalition(e, rule, suspects, y)
                                       : oracle_cpmw(e, rule, suspects, y, budget);
    v.route = Route::fallback;
    return v;
  }
  const CandidateId x = winner(e, rule);
  check_actual_winner(e, x, y);
  const auto m_set = normalize_suspects(e, suspects);
  DetectionVerdict v;
  v.current_winner = x;
  v.coalition = m_set;
  if (m_set.empty()) return v;
  std::vector<Preference> test;
  test.reserve(m_set.size());
  for (auto i : m_set) test.push_back(detail::lift_pair(e.ballot(i), x, y));
  const ReplayContext ctx(e, rule, m_set);
  v.replays = 1;
  if (ctx.winner(test) == y) {
    v.yes = true;
    v.actual_winner = y;
    v.witness = make_witness(m_set, test);
  }
  return v;
}

/// CPMSW for convex scoring vectors. Delta(v) is y's gain minus x's gain
/// when v is rewritten to x > y > (rest as reported); the best coalition of
/// size t is a prefix of the voters sorted by Delta, and each prefix is
/// confirmed by exact winner determination on the rewritten profile.
inline DetectionVerdict cpmsw_scoring_greedy(const ElectionInstance& e, const VotingRule& rule,
                                             CandidateId y, std::size_t k) {
  const auto& alpha = rule.scoring_vector();
  rule.check_applicable(e.candidate_count());
  if (!alpha.is_convex()) {
    throw InvalidQueryError("greedy search needs alpha_1 - alpha_2 <= alpha_i - alpha_{i+1}");
  }
  const CandidateId x = winner(e, rule);
  check_actual_winner(e, x, y);
  const std::size_t n = e.voter_count();
  const std::size_t m = e.candidate_count();
  const auto& tb = e.tiebreak();

  DetectionVerdict v;
  v.current_winner = x;
  if (m < 2) return v;
  std::vector<Score> delta(n);
  for (VoterIndex i = 0; i < n; ++i) {
    const auto& p = e.ballot(i);
    delta[i] = (alpha[1] - alpha[p.rank_of(y)]) - (alpha[0] - alpha[p.rank_of(x)]);
  }
  std::vector<VoterIndex> order(n);
  std::iota(order.begin(), order.end(), VoterIndex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](VoterIndex a, VoterIndex b) { return delta[a] > delta[b]; });

  std::vector<Score> scores = evaluate_scores(e, alpha).values;
  const std::size_t limit = std::min(k, n);
  for (std::size_t t = 0; t < limit; ++t) {
    const auto& p = e.ballot(order[t]);
    const Preference lifted = detail::lift_pair(p, x, y);
    for (std::size_t r = 0; r < m; ++r) {
      scores[p[r]] -= alpha[r];
      scores[lifted[r]] += alpha[r];
    }
    ++v.replays;
    if (tb.first_of(argmax(scores)) == y) {
      std::vector<VoterIndex> coalition(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t + 1));
      std::sort(coalition.begin(), coalition.end());
      v.yes = true;
      v.actual_winner = y;
      v.coalition = coalition;
      for (auto i : coalition) v.witness.push_back({i, detail::lift_pair(e.ballot(i), x, y)});
      return v;
    }
  }
  return v;
}

/// CPMSW for plurality-equivalent rules. Selecting sel(z) voters whose top
/// is z works iff need(z) = full(z) - allowed(z) <= sel(z) <= full(z) for
/// every z != y and sum_z (allowed(z) - full(z)) >= 0; the second condition
/// does not depend on the selection, so the smallest coalition takes
/// max(0, need(z)) voters of each z (lowest indices first).
inline DetectionVerdict cpmsw_plurality_search(const ElectionInstance& e, const VotingRule& rule,
                                               CandidateId y, std::size_t k) {
  if (!rule.scoring_vector().is_plurality_like()) {
    throw InvalidQueryError("rule '" + rule.name() + "' is not plurality");
  }
  rule.check_applicable(e.candidate_count());
  const CandidateId x = winner(e, rule);
  check_actual_winner(e, x, y);
  const auto& tb = e.tiebreak();
  const std::size_t m = e.candidate_count();
  const auto full = detail::plurality_tops(e, {});

  DetectionVerdict v;
  v.current_winner = x;
  std::vector<Score> need(m, 0);
  Score slack = 0;
  Score required = 0;
  for (CandidateId z = 0; z < m; ++z) {
    if (z == y) continue;
    const Score allowed = full[y] - 1 + (tb.prefers(y, z) ? 1 : 0);
    if (allowed < 0) return v;
    need[z] = std::max<Score>(0, full[z] - allowed);
    slack += allowed - full[z];
    required += need[z];
  }
  if (slack < 0 || required > static_cast<Score>(k)) return v;
  std::vector<VoterIndex> coalition;
  for (VoterIndex i = 0; i < e.voter_count(); ++i) {
    const CandidateId t = e.ballot(i).top();
    if (t != y && need[t] > 0) {
      --need[t];
      coalition.push_back(i);
    }
  }
  auto w = cpmw_plurality_coalition(e, rule, coalition, y);
  w.replays = 1;
  return w;
}

/// Best scoring-rule procedure for one (suspects, y) pair.
inline DetectionVerdict cpmw_scoring(const ElectionInstance& e, const VotingRule& rule,
                                     std::span<const VoterIndex> suspects, CandidateId y,
                                     const SearchBudget& budget = {}) {
  const auto& alpha = rule.scoring_vector();
  if (suspects.size() == 1) return cpmw_scoring_single(e, rule, suspects[0], y);
  if (alpha.is_convex()) return cpmw_scoring_coalition(e, rule, suspects, y, budget);
  if (alpha.is_plurality_like()) return cpmw_plurality_coalition(e, rule, suspects, y);
  return oracle_cpmw(e, rule, suspects, y, budget);
}

inline DetectionVerdict cpm_scoring(const ElectionInstance& e, const VotingRule& rule,
                                    std::span<const VoterIndex> suspects,
                                    const SearchBudget& budget = {}) {
  rule.scoring_vector();
  rule.check_applicable(e.candidate_count());
  const CandidateId x = winner(e, rule);
  DetectionVerdict none;
  none.current_winner = x;
  none.coalition = normalize_suspects(e, suspects);
  for (CandidateId y : e.tiebreak().order().ranking()) {
    if (y == x) continue;
    auto v = cpmw_scoring(e, rule, suspects, y, budget);
    none.replays += v.replays;
    if (v.route != Route::polynomial) none.route = v.route;
    if (v.yes) {
      v.replays = none.replays;
      return v;
    }
  }
  return none;
}

/// CPMSW for any scoring rule: greedy / plurality closed form where they
/// apply, subset search otherwise.
inline DetectionVerdict cpmsw_scoring(const ElectionInstance& e, const VotingRule& rule,
                                      CandidateId y, std::size_t k,
                                      const SearchBudget& budget = {}) {
  const auto& alpha = rule.scoring_vector();
  if (alpha.is_convex()) return cpmsw_scoring_greedy(e, rule, y, k);
  if (alpha.is_plurality_like()) return cpmsw_plurality_search(e, rule, y, k);
  const CoalitionDecider decide = [](const ElectionInstance& ee, const VotingRule& r,
                                     std::span<const VoterIndex> s,
                                     std::optional<CandidateId> yy, const SearchBudget& b) {
    return cpmw_scoring(ee, r, s, *yy, b);
  };
  return search_coalitions(e, rule, k, y, {false, budget}, decide).verdict;
}

inline DetectionVerdict cpms_scoring(const ElectionInstance& e, const VotingRule& rule,
                                     std::size_t k, const SearchBudget& budget = {}) {
  rule.scoring_vector();
  rule.check_applicable(e.candidate_count());
  const CandidateId x = winner(e, rule);
  DetectionVerdict none;
  none.current_winner = x;
  for (CandidateId y : e.tiebreak().order().ranking()) {
    if (y == x) continue;
    auto v = cpmsw_scoring(e, rule, y, k, budget);
    none.replays += v.replays;
    if (v.route != Route::polynomial) none.route = v.route;
    if (v.yes) {
      v.replays = none.replays;
      return v;
    }
  }
  return none;
}

}  // namespace pmd
