#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmd/election.hpp"
#include "pmd/rules.hpp"

namespace pmd {

enum class Problem { cpmw, cpm, cpmsw, cpms };

inline const char* to_string(Problem p) {
  switch (p) {
    case Problem::cpmw: return "cpmw";
    case Problem::cpm: return "cpm";
    case Problem::cpmsw: return "cpmsw";
    case Problem::cpms: return "cpms";
  }
  return "?";
}

/// Suspects M (for CPM/CPMW), optional actual winner y, optional bound k
/// (for CPMS/CPMSW). The bound being set selects the search problems.
struct DetectionQuery {
  std::vector<VoterIndex> suspects;
  std::optional<CandidateId> actual_winner;
  std::optional<std::size_t> bound;

  Problem problem() const {
    if (bound) return actual_winner ? Problem::cpmsw : Problem::cpms;
    return actual_winner ? Problem::cpmw : Problem::cpm;
  }
};

/// How a verdict was obtained.
enum class Route { polynomial, exhaustive, fallback };

inline const char* to_string(Route r) {
  switch (r) {
    case Route::polynomial: return "polynomial";
    case Route::exhaustive: return "exhaustive";
    case Route::fallback: return "fallback";
  }
  return "?";
}

struct WitnessBallot {
  VoterIndex voter;
  Preference preference;

  friend bool operator==(const WitnessBallot&, const WitnessBallot&) = default;
};

struct DetectionVerdict {
  bool yes = false;
  CandidateId current_winner = 0;
  /// Set on YES: the candidate the witness profile elects.
  std::optional<CandidateId> actual_winner;
  /// Actual preferences for the coalition, ascending by voter.
  std::vector<WitnessBallot> witness;
  /// The coalition the verdict refers to (the suspects, or the found set).
  std::vector<VoterIndex> coalition;
  Route route = Route::polynomial;
  std::uint64_t replays = 0;
};

/// Replay limit for exhaustive routines; `force` lifts it.
struct SearchBudget {
  std::uint64_t max_replays = 10'000'000;
  bool force = false;

  void require(double replays, const std::string& what) const {
    if (!force && replays > static_cast<double>(max_replays)) {
      throw BudgetExceededError(what + " needs ~" + std::to_string(replays) +
                                    " replays, budget is " + std::to_string(max_replays) +
                                    " (use --force to override)",
                                replays);
    }
  }
};

/// Sorted, de-duplicated, range-checked suspect list.
inline std::vector<VoterIndex> normalize_suspects(const ElectionInstance& e,
                                                  std::span<const VoterIndex> suspects) {
  std::vector<VoterIndex> out(suspects.begin(), suspects.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw InvalidQueryError("suspect list contains duplicates");
  }
  if (!out.empty() && out.back() >= e.voter_count()) {
    throw InvalidQueryError("suspect index " + std::to_string(out.back()) +
                            " out of range (n=" + std::to_string(e.voter_count()) + ")");
  }
  return out;
}

inline void check_actual_winner(const ElectionInstance& e, CandidateId current,
                                CandidateId y) {
  if (y >= e.candidate_count()) {
    throw InvalidQueryError("unknown actual winner id " + std::to_string(y));
  }
  if (y == current) {
    throw InvalidQueryError("actual winner '" + e.name(y) + "' is already the current winner");
  }
}

/// Winner determination for "non-suspects as reported, suspects replaced".
/// External aggregates are computed once so that each replay costs
/// O(|M| m + m^2) for scoring, maximin and Bucklin.
class ReplayContext {
 public:
  ReplayContext(const ElectionInstance& e, const VotingRule& rule,
                std::span<const VoterIndex> suspects)
      : election_(&e), rule_(&rule), suspect_count_(suspects.size()) {
    rule.check_applicable(e.candidate_count());
    const std::size_t m = e.candidate_count();
    std::vector<char> is_suspect(e.voter_count(), 0);
    for (auto v : suspects) is_suspect.at(v) = 1;
    switch (rule.kind()) {
      case RuleKind::scoring: {
        const auto& v = rule.scoring_vector();
        scores_.assign(m, 0);
        for (VoterIndex i = 0; i < e.voter_count(); ++i) {
          if (is_suspect[i]) continue;
          const auto& p = e.ballot(i);
          for (std::size_t r = 0; r < m; ++r) scores_[p[r]] += v[r];
        }
        break;
      }
      case RuleKind::maximin:
        graph_.emplace(m, std::span<const Preference>{});
        for (VoterIndex i = 0; i < e.voter_count(); ++i)
          if (!is_suspect[i]) graph_->add(e.ballot(i), 1);
        break;
      case RuleKind::bucklin:
        counts_ = TopCounts(m);
        for (VoterIndex i = 0; i < e.voter_count(); ++i)
          if (!is_suspect[i]) counts_.add(e.ballot(i), 1);
        break;
      case RuleKind::stv: {
        std::map<Preference, Score> grouped;
        for (VoterIndex i = 0; i < e.voter_count(); ++i)
          if (!is_suspect[i]) ++grouped[e.ballot(i)];
        for (auto& [p, w] : grouped) stv_external_.emplace_back(p, w);
        break;
      }
    }
  }

  const ElectionInstance& election() const noexcept { return *election_; }
  const VotingRule& rule() const noexcept { return *rule_; }

  /// Scores from the non-suspect ballots (scoring rules only).
  const std::vector<Score>& external_scores() const { return scores_; }
  const WeightedMajorityGraph& external_graph() const { return *graph_; }
  const TopCounts& external_counts() const { return counts_; }

  CandidateId winner(std::span<const Preference> substitutes) const {
    if (substitutes.size() != suspect_count_) {
      throw InvalidQueryError("replay needs one ballot per suspect");
    }
    const auto& e = *election_;
    const std::size_t m = e.candidate_count();
    const auto& tb = e.tiebreak();
    if (m == 1) return 0;
    switch (rule_->kind()) {
      case RuleKind::scoring: {
        const auto& v = rule_->scoring_vector();
        std::vector<Score> s = scores_;
        for (const auto& p : substitutes)
          for (std::size_t r = 0; r < m; ++r) s[p[r]] += v[r];
        return tb.first_of(argmax(s));
      }
      case RuleKind::maximin: {
        WeightedMajorityGraph g = *graph_;
        for (const auto& p : substitutes) g.add(p, 1);
        return tb.first_of(argmax(maximin_scores(g)));
      }
      case RuleKind::bucklin: {
        TopCounts c = counts_;
        for (const auto& p : substitutes) c.add(p, 1);
        return tb.first_of(argmin(c.levels()));
      }
      case RuleKind::stv: {
        std::vector<WeightedBallot> wb;
        wb.reserve(stv_external_.size() + substitutes.size());
        for (const auto& [p, w] : stv_external_) wb.push_back({&p, w});
        for (const auto& p : substitutes) wb.push_back({&p, 1});
        return stv_run(m, wb, tb).back();
      }
    }
    return 0;
  }

 private:
  const ElectionInstance* election_;
  const VotingRule* rule_;
  std::size_t suspect_count_;
  std::vector<Score> scores_;
  std::optional<WeightedMajorityGraph> graph_;
  TopCounts counts_;
  std::vector<std::pair<Preference, Score>> stv_external_;
};

/// Definition-level soundness check for a YES verdict: replaying the
/// witness elects `actual_winner`, which differs from the current winner,
/// and every witness ballot ranks the current winner above it.
/// NO verdicts are trivially sound.
inline bool verify_witness(const ElectionInstance& e, const VotingRule& rule,
                           const DetectionVerdict& v) {
  if (!v.yes) return true;
  if (!v.actual_winner || *v.actual_winner == v.current_winner) return false;
  if (winner(e, rule) != v.current_winner) return false;
  std::vector<VoterIndex> voters;
  std::vector<Preference> prefs;
  for (const auto& w : v.witness) {
    if (!w.preference.prefers(v.current_winner, *v.actual_winner)) return false;
    voters.push_back(w.voter);
    prefs.push_back(w.preference);
  }
  return winner(e.replaced(voters, prefs), rule) == *v.actual_winner;
}

/// Appends the candidates not yet in `head`, in tie-break order.
inline Preference complete_in_tiebreak_order(const ElectionInstance& e,
                                             std::vector<CandidateId> head) {
  std::vector<char> used(e.candidate_count(), 0);
  for (auto c : head) used[c] = 1;
  for (auto c : e.tiebreak().order().ranking())
    if (!used[c]) head.push_back(c);
  return Preference(std::move(head));
}

inline std::vector<WitnessBallot> make_witness(std::span<const VoterIndex> voters,
                                               std::span<const Preference> prefs) {
  std::vector<WitnessBallot> out;
  for (std::size_t i = 0; i < voters.size(); ++i) out.push_back({voters[i], prefs[i]});
  return out;
}

}  // namespace pmd
