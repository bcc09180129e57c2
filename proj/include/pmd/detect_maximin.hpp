#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pmd/detection.hpp"

namespace pmd {

/// Candidates against whom x (resp. y) has its worst external margin.
struct WitnessSets {
  std::vector<CandidateId> worst_of_x;
  std::vector<CandidateId> worst_of_y;
};

namespace detail {

/// External maximin score and worst-opponent set of every candidate.
struct MaximinExternal {
  std::vector<Score> score;
  std::vector<std::vector<CandidateId>> worst;
};

inline MaximinExternal maximin_external(const WeightedMajorityGraph& g) {
  const std::size_t m = g.candidate_count();
  MaximinExternal out{maximin_scores(g), std::vector<std::vector<CandidateId>>(m)};
  for (CandidateId a = 0; a < m; ++a)
    for (CandidateId b = 0; b < m; ++b)
      if (a != b && g.margin(a, b) == out.score[a]) out.worst[a].push_back(b);
  return out;
}

/// One suspect ballot adds +-1 to every external margin, so a candidate's
/// maximin score moves to ext + 1 exactly when it is ranked above all of its
/// worst opponents and to ext - 1 otherwise. For a guess of y's and x's
/// moves, "y wins" turns into placement constraints of the form
///   c may be placed only once (all of A are placed) and (some of S is placed)
/// which are monotone in the placed set, so filling top-down with any ready
/// candidate succeeds whenever some admissible ballot exists.
struct Requirement {
  std::vector<CandidateId> after_all;   // every one of these must be above
  std::vector<CandidateId> after_some;  // at least one of these must be above
};

inline std::optional<std::vector<CandidateId>> fill_ballot(
    std::span<const Requirement> req, std::span<const char> priority, const TieBreakOrder& tb) {
  const std::size_t m = req.size();
  std::vector<char> placed(m, 0);
  std::vector<CandidateId> out;
  out.reserve(m);
  auto ready = [&](CandidateId c) {
    for (auto a : req[c].after_all)
      if (!placed[a]) return false;
    if (req[c].after_some.empty()) return true;
    for (auto s : req[c].after_some)
      if (placed[s]) return true;
    return false;
  };
  for (std::size_t slot = 0; slot < m; ++slot) {
    std::optional<CandidateId> pick;
    for (CandidateId c = 0; c < m; ++c) {
      if (placed[c] || !ready(c)) continue;
      if (!pick || priority[c] > priority[*pick] ||
          (priority[c] == priority[*pick] && tb.prefers(*pick, c))) {
        pick = c;
      }
    }
    if (!pick) return std::nullopt;
    placed[*pick] = 1;
    out.push_back(*pick);
  }
  return out;
}

}  // namespace detail

inline WitnessSets maximin_witness_sets(const ElectionInstance& e, VoterIndex suspect,
                                        CandidateId x, CandidateId y) {
  const ReplayContext ctx(e, VotingRule::maximin(),
                          std::span<const VoterIndex>(&suspect, 1));
  const auto ext = detail::maximin_external(ctx.external_graph());
  return {ext.worst[x], ext.worst[y]};
}

/// Maximin, single suspect. Enumerates the four (x, y) score-move guesses in
/// the order (-1,-1), (-1,+1), (+1,-1), (+1,+1); the ballot found is
/// normalized so that y immediately follows x.
inline DetectionVerdict cpmw_maximin_single(const ElectionInstance& e, VoterIndex suspect,
                                            CandidateId y) {
  const auto rule = VotingRule::maximin();
  const std::size_t m = e.candidate_count();
  if (m < 2) throw InvalidQueryError("maximin detection needs at least two candidates");
  const CandidateId x = winner(e, rule);
  check_actual_winner(e, x, y);
  const auto suspects = normalize_suspects(e, std::span<const VoterIndex>(&suspect, 1));
  const ReplayContext ctx(e, rule, suspects);
  const auto ext = detail::maximin_external(ctx.external_graph());
  const auto& tb = e.tiebreak();

  DetectionVerdict v;
  v.current_winner = x;
  v.coalition = suspects;
  auto in = [](const std::vector<CandidateId>& s, CandidateId c) {
    return std::find(s.begin(), s.end(), c) != s.end();
  };

  constexpr std::array<std::pair<int, int>, 4> guesses{{{-1, -1}, {-1, +1}, {+1, -1}, {+1, +1}}};
  for (auto [dx, dy] : guesses) {
    const Score sy = ext.score[y] + dy;
    const Score sx = ext.score[x] + dx;
    auto threshold = [&](CandidateId z) { return tb.prefers(y, z) ? sy : sy - 1; };
    if (sx > threshold(x)) continue;
    if (dy > 0 && in(ext.worst[y], x)) continue;  // y above all of B(y) but below x

    std::vector<detail::Requirement> req(m);
    std::vector<char> priority(m, 0);
    bool feasible = true;
    req[y].after_all.push_back(x);
    if (dy < 0) {
      req[y].after_some = ext.worst[y];
      for (auto b : ext.worst[y]) priority[b] = 1;
    } else {
      for (auto b : ext.worst[y]) req[b].after_all.push_back(y);
    }
    if (dx < 0) {
      req[x].after_some = ext.worst[x];
      for (auto b : ext.worst[x]) priority[b] = 1;
    } else {
      for (auto b : ext.worst[x]) req[b].after_all.push_back(x);
    }
    for (CandidateId z = 0; z < m && feasible; ++z) {
      if (z == x || z == y) continue;
      if (ext.score[z] - 1 > threshold(z)) feasible = false;
      else if (ext.score[z] + 1 > threshold(z)) req[z].after_some = ext.worst[z];
    }
    if (!feasible) continue;
    auto order = detail::fill_ballot(req, priority, tb);
    if (!order) continue;

    // moving y up behind x only improves y's margins and worsens the others'
    order->erase(std::find(order->begin(), order->end(), y));
    order->insert(std::find(order->begin(), order->end(), x) + 1, y);
    Preference p(std::move(*order));
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

inline DetectionVerdict cpm_maximin_single(const ElectionInstance& e, VoterIndex suspect) {
  const auto rule = VotingRule::maximin();
  const CandidateId x = winner(e, rule);
  DetectionVerdict none;
  none.current_winner = x;
  none.coalition = normalize_suspects(e, std::span<const VoterIndex>(&suspect, 1));
  if (e.candidate_count() < 2) return none;
  for (CandidateId y : e.tiebreak().order().ranking()) {
    if (y == x) continue;
    auto v = cpmw_maximin_single(e, suspect, y);
    none.replays += v.replays;
    if (v.yes) {
      v.replays = none.replays;
      return v;
    }
  }
  return none;
}

}  // namespace pmd
