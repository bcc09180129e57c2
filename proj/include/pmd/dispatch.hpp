#pragma once

// Picks the procedure for a (rule, problem, coalition size) combination:
//   scoring   single suspect / convex coalition / plurality / exhaustive
//   maximin   single suspect polynomial, coalitions exhaustive
//   Bucklin   polynomial for any coalition
//   STV       exhaustive

#include <optional>
#include <span>
#include <stdexcept>

#include "pmd/detect_bucklin.hpp"
#include "pmd/detect_maximin.hpp"
#include "pmd/detect_scoring.hpp"
#include "pmd/oracle.hpp"

namespace pmd {

inline DetectionVerdict detect_cpmw(const ElectionInstance& e, const VotingRule& rule,
                                    std::span<const VoterIndex> suspects, CandidateId y,
                                    const SearchBudget& budget = {}) {
  switch (rule.kind()) {
    case RuleKind::scoring:
      return cpmw_scoring(e, rule, suspects, y, budget);
    case RuleKind::maximin:
      if (suspects.size() == 1 && e.candidate_count() >= 2) {
        return cpmw_maximin_single(e, suspects[0], y);
      }
      return oracle_cpmw(e, rule, suspects, y, budget);
    case RuleKind::bucklin:
      return cpmw_bucklin(e, suspects, y);
    case RuleKind::stv:
      return oracle_cpmw(e, rule, suspects, y, budget);
  }
  throw std::logic_error("unhandled rule kind");
}

inline DetectionVerdict detect_cpm(const ElectionInstance& e, const VotingRule& rule,
                                   std::span<const VoterIndex> suspects,
                                   const SearchBudget& budget = {}) {
  switch (rule.kind()) {
    case RuleKind::scoring:
      return cpm_scoring(e, rule, suspects, budget);
    case RuleKind::maximin:
      if (suspects.size() == 1 && e.candidate_count() >= 2) {
        return cpm_maximin_single(e, suspects[0]);
      }
      return oracle_cpm(e, rule, suspects, budget);
    case RuleKind::bucklin:
      return cpm_bucklin(e, suspects);
    case RuleKind::stv:
      return oracle_cpm(e, rule, suspects, budget);
  }
  throw std::logic_error("unhandled rule kind");
}

/// Fastest available per-subset decider for the given rule.
inline CoalitionDecider best_decider() {
  return [](const ElectionInstance& e, const VotingRule& r, std::span<const VoterIndex> s,
            std::optional<CandidateId> y, const SearchBudget& b) {
    return y ? detect_cpmw(e, r, s, *y, b) : detect_cpm(e, r, s, b);
  };
}

inline DetectionVerdict detect_cpmsw(const ElectionInstance& e, const VotingRule& rule,
                                     CandidateId y, std::size_t k,
                                     const SearchBudget& budget = {}) {
  if (rule.is_scoring()) return cpmsw_scoring(e, rule, y, k, budget);
  return search_coalitions(e, rule, k, y, {false, budget}, best_decider()).verdict;
}

inline DetectionVerdict detect_cpms(const ElectionInstance& e, const VotingRule& rule,
                                    std::size_t k, const SearchBudget& budget = {}) {
  if (rule.is_scoring()) return cpms_scoring(e, rule, k, budget);
  return search_coalitions(e, rule, k, std::nullopt, {false, budget}, best_decider()).verdict;
}

/// Answers any of the four problems; YES verdicts are re-checked against
/// a from-scratch election before being returned.
inline DetectionVerdict detect(const ElectionInstance& e, const VotingRule& rule,
                               const DetectionQuery& q, const SearchBudget& budget = {}) {
  rule.check_applicable(e.candidate_count());
  DetectionVerdict v;
  switch (q.problem()) {
    case Problem::cpmw: v = detect_cpmw(e, rule, q.suspects, *q.actual_winner, budget); break;
    case Problem::cpm: v = detect_cpm(e, rule, q.suspects, budget); break;
    case Problem::cpmsw: v = detect_cpmsw(e, rule, *q.actual_winner, *q.bound, budget); break;
    case Problem::cpms: v = detect_cpms(e, rule, *q.bound, budget); break;
  }
  if (!verify_witness(e, rule, v)) throw std::logic_error("internal error: unsound witness");
  return v;
}

}  // namespace pmd
