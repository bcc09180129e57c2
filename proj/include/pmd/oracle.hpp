#pragma once

// Brute-force decision procedures. They follow the definition of a
// coalition of possible manipulators literally and serve both as the
// reference for the polynomial algorithms and as the solver for the cases
// without one (STV, maximin coalitions, general scoring coalitions).

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "pmd/detection.hpp"

namespace pmd {

namespace detail {

inline double factorial(std::size_t m) {
  double f = 1;
  for (std::size_t i = 2; i <= m; ++i) f *= static_cast<double>(i);
  return f;
}

/// C(n + c - 1, c): multisets of size c drawn from n items.
inline double multiset_count(double n, std::size_t c) {
  double r = 1;
  for (std::size_t i = 1; i <= c; ++i) r = r * (n + static_cast<double>(i) - 1) / static_cast<double>(i);
  return r;
}

inline double binomial(std::size_t n, std::size_t c) {
  double r = 1;
  for (std::size_t i = 1; i <= c; ++i)
    r = r * static_cast<double>(n - c + i) / static_cast<double>(i);
  return r;
}

/// All linear orders ranking `above` over `below`, in lexicographic order.
inline std::vector<Preference> admissible_preferences(std::size_t m, CandidateId above,
                                                      CandidateId below) {
  std::vector<CandidateId> r(m);
  std::iota(r.begin(), r.end(), CandidateId{0});
  std::vector<Preference> out;
  do {
    const auto ia = std::find(r.begin(), r.end(), above);
    const auto ib = std::find(r.begin(), r.end(), below);
    if (ia < ib) out.emplace_back(r);
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

/// Searches nondecreasing index tuples over `prefs` in lexicographic order.
/// With an anonymous rule the first hit is also the lexicographically first
/// hit over all tuples (any hit can be sorted without changing the outcome).
inline DetectionVerdict exhaust_tuples(const ReplayContext& ctx,
                                       std::span<const VoterIndex> suspects,
                                       std::span<const Preference> prefs, CandidateId x,
                                       CandidateId y) {
  DetectionVerdict v;
  v.current_winner = x;
  v.coalition.assign(suspects.begin(), suspects.end());
  v.route = Route::exhaustive;
  const std::size_t c = suspects.size();
  std::vector<std::size_t> idx(c, 0);
  std::vector<Preference> subs(c);
  if (c == 0) {
    v.replays = 1;
    return v;  // profile unchanged, winner stays x
  }
  if (prefs.empty()) return v;
  while (true) {
    for (std::size_t i = 0; i < c; ++i) subs[i] = prefs[idx[i]];
    ++v.replays;
    if (ctx.winner(subs) == y) {
      v.yes = true;
      v.actual_winner = y;
      v.witness = make_witness(suspects, subs);
      return v;
    }
    // next nondecreasing tuple
    std::size_t pos = c;
    while (pos > 0 && idx[pos - 1] + 1 == prefs.size()) --pos;
    if (pos == 0) break;
    const std::size_t next = idx[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < c; ++i) idx[i] = next;
  }
  return v;
}

}  // namespace detail

/// Decides CPMW by trying every admissible actual profile for the suspects.
inline DetectionVerdict oracle_cpmw(const ElectionInstance& e, const VotingRule& rule,
                                    std::span<const VoterIndex> suspects, CandidateId y,
                                    const SearchBudget& budget = {}) {
  rule.check_applicable(e.candidate_count());
  const CandidateId x = winner(e, rule);
  check_actual_winner(e, x, y);
  const auto m_set = normalize_suspects(e, suspects);
  const std::size_t m = e.candidate_count();
  budget.require(detail::multiset_count(detail::factorial(m) / 2, m_set.size()),
                 "exhaustive CPMW");
  const ReplayContext ctx(e, rule, m_set);
  const auto prefs = m_set.empty() ? std::vector<Preference>{}
                                   : detail::admissible_preferences(m, x, y);
  return detail::exhaust_tuples(ctx, m_set, prefs, x, y);
}

/// CPM: disjunction of CPMW over y != x, in tie-break order.
inline DetectionVerdict oracle_cpm(const ElectionInstance& e, const VotingRule& rule,
                                   std::span<const VoterIndex> suspects,
                                   const SearchBudget& budget = {}) {
  rule.check_applicable(e.candidate_count());
  const CandidateId x = winner(e, rule);
  const auto m_set = normalize_suspects(e, suspects);
  const std::size_t m = e.candidate_count();
  DetectionVerdict none;
  none.current_winner = x;
  none.coalition = m_set;
  none.route = Route::exhaustive;
  if (m == 1) return none;
  budget.require(static_cast<double>(m - 1) *
                     detail::multiset_count(detail::factorial(m) / 2, m_set.size()),
                 "exhaustive CPM");
  const ReplayContext ctx(e, rule, m_set);
  for (CandidateId y : e.tiebreak().order().ranking()) {
    if (y == x) continue;
    const auto prefs = m_set.empty() ? std::vector<Preference>{}
                                     : detail::admissible_preferences(m, x, y);
    auto v = detail::exhaust_tuples(ctx, m_set, prefs, x, y);
    none.replays += v.replays;
    if (v.yes) {
      v.replays = none.replays;
      return v;
    }
  }
  return none;
}

/// Per-subset decision procedure used by `search_coalitions`.
using CoalitionDecider = std::function<DetectionVerdict(
    const ElectionInstance&, const VotingRule&, std::span<const VoterIndex>,
    std::optional<CandidateId>, const SearchBudget&)>;

inline CoalitionDecider oracle_decider() {
  return [](const ElectionInstance& e, const VotingRule& r, std::span<const VoterIndex> s,
            std::optional<CandidateId> y, const SearchBudget& b) {
    return y ? oracle_cpmw(e, r, s, *y, b) : oracle_cpm(e, r, s, b);
  };
}

struct SearchOptions {
  /// Keep going after the first hit and collect every minimal coalition.
  bool exhaust = false;
  SearchBudget budget;
};

struct CoalitionSearchResult {
  DetectionVerdict verdict;
  std::vector<std::vector<VoterIndex>> minimal_coalitions;
};

/// CPMSW (y given) / CPMS (y absent) by enumerating suspect sets of size
/// 1..k in size-then-lexicographic order.
inline CoalitionSearchResult search_coalitions(const ElectionInstance& e,
                                               const VotingRule& rule, std::size_t k,
                                               std::optional<CandidateId> y,
                                               const SearchOptions& opts = {},
                                               const CoalitionDecider& decide = oracle_decider()) {
  rule.check_applicable(e.candidate_count());
  const CandidateId x = winner(e, rule);
  if (y) check_actual_winner(e, x, *y);
  const std::size_t n = e.voter_count();
  k = std::min(k, n);
  double subsets = 0;
  for (std::size_t c = 1; c <= k; ++c) subsets += detail::binomial(n, c);
  opts.budget.require(subsets, "coalition search");

  CoalitionSearchResult result;
  result.verdict.current_winner = x;
  result.verdict.route = Route::polynomial;
  auto contains_hit = [&](const std::vector<VoterIndex>& s) {
    for (const auto& hit : result.minimal_coalitions)
      if (std::includes(s.begin(), s.end(), hit.begin(), hit.end())) return true;
    return false;
  };
  for (std::size_t c = 1; c <= k; ++c) {
    std::vector<VoterIndex> s(c);
    std::iota(s.begin(), s.end(), VoterIndex{0});
    while (true) {
      if (!(opts.exhaust && contains_hit(s))) {
        auto v = decide(e, rule, s, y, opts.budget);
        result.verdict.replays += v.replays;
        if (v.route != Route::polynomial) result.verdict.route = Route::exhaustive;
        if (v.yes) {
          if (!result.verdict.yes) {
            const auto replays = result.verdict.replays;
            const auto route = result.verdict.route;
            result.verdict = v;
            result.verdict.replays = replays;
            result.verdict.route = route;
          }
          result.minimal_coalitions.push_back(s);
          if (!opts.exhaust) return result;
        }
      }
      // next c-subset of 0..n-1
      std::size_t i = c;
      while (i > 0 && s[i - 1] == n - c + i - 1) --i;
      if (i == 0) break;
      ++s[i - 1];
      for (std::size_t j = i; j < c; ++j) s[j] = s[j - 1] + 1;
    }
  }
  return result;
}

}  // namespace pmd
