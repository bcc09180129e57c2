#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pmd/errors.hpp"

namespace pmd {

using CandidateId = std::uint32_t;
using VoterIndex = std::size_t;
using Score = std::int64_t;

struct Candidate {
  CandidateId id;
  std::string name;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// A strict linear order over candidates 0..m-1, most preferred first.
class Preference {
 public:
  Preference() = default;

  explicit Preference(std::vector<CandidateId> ranking)
      : ranking_(std::move(ranking)), rank_(ranking_.size(), kUnset) {
    for (std::size_t r = 0; r < ranking_.size(); ++r) {
      const CandidateId c = ranking_[r];
      if (c >= ranking_.size()) {
        throw RosterError("ballot mentions candidate id " + std::to_string(c) +
                          " outside 0.." + std::to_string(ranking_.size() - 1));
      }
      if (rank_[c] != kUnset) {
        throw RosterError("ballot ranks candidate id " + std::to_string(c) +
                          " twice");
      }
      rank_[c] = static_cast<CandidateId>(r);
    }
  }

  static Preference identity(std::size_t m) {
    std::vector<CandidateId> r(m);
    for (std::size_t i = 0; i < m; ++i) r[i] = static_cast<CandidateId>(i);
    return Preference(std::move(r));
  }

  std::size_t size() const noexcept { return ranking_.size(); }
  std::span<const CandidateId> ranking() const noexcept { return ranking_; }
  CandidateId operator[](std::size_t rank0) const { return ranking_[rank0]; }
  CandidateId top() const { return ranking_.front(); }

  /// 0-based rank; callers must pass a valid id.
  std::size_t rank_of(CandidateId c) const { return rank_[c]; }
  bool prefers(CandidateId a, CandidateId b) const { return rank_[a] < rank_[b]; }

  friend bool operator==(const Preference& a, const Preference& b) {
    return a.ranking_ == b.ranking_;
  }
  friend std::strong_ordering operator<=>(const Preference& a,
                                          const Preference& b) {
    return a.ranking_ <=> b.ranking_;
  }

 private:
  static constexpr CandidateId kUnset = static_cast<CandidateId>(-1);
  std::vector<CandidateId> ranking_;
  std::vector<CandidateId> rank_;
};

/// 1-based position of `c` in `p`.
inline std::size_t position_of(const Preference& p, CandidateId c) {
  if (c >= p.size()) {
    throw RosterError("unknown candidate id " + std::to_string(c));
  }
  return p.rank_of(c) + 1;
}

/// The fixed order used to break ties; earlier means favoured.
class TieBreakOrder {
 public:
  TieBreakOrder() = default;
  explicit TieBreakOrder(Preference order) : order_(std::move(order)) {}

  const Preference& order() const noexcept { return order_; }
  std::size_t rank(CandidateId c) const { return order_.rank_of(c); }
  bool prefers(CandidateId a, CandidateId b) const { return order_.prefers(a, b); }

  /// Tie-break-first member of a non-empty candidate set.
  CandidateId first_of(std::span<const CandidateId> cs) const {
    return *std::min_element(cs.begin(), cs.end(), [&](auto a, auto b) {
      return order_.prefers(a, b);
    });
  }
  CandidateId last_of(std::span<const CandidateId> cs) const {
    return *std::max_element(cs.begin(), cs.end(), [&](auto a, auto b) {
      return order_.prefers(a, b);
    });
  }

  friend bool operator==(const TieBreakOrder&, const TieBreakOrder&) = default;

 private:
  Preference order_;
};

/// Roster, ballots and tie-break order. Immutable after construction.
class ElectionInstance {
 public:
  ElectionInstance(std::vector<std::string> names, std::vector<Preference> ballots,
                   std::optional<TieBreakOrder> tiebreak = std::nullopt)
      : ballots_(std::move(ballots)) {
    if (names.empty()) throw RosterError("roster is empty");
    std::unordered_set<std::string_view> seen;
    roster_.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      roster_.push_back({static_cast<CandidateId>(i), std::move(names[i])});
    }
    for (const auto& c : roster_) {
      if (c.name.empty()) throw RosterError("candidate names must be non-empty");
      if (!seen.insert(c.name).second) {
        throw RosterError("duplicate candidate name '" + c.name + "'");
      }
    }
    if (ballots_.empty()) throw RosterError("an election needs at least one ballot");
    for (std::size_t i = 0; i < ballots_.size(); ++i) {
      if (ballots_[i].size() != roster_.size()) {
        throw RosterError("ballot " + std::to_string(i) + " ranks " +
                          std::to_string(ballots_[i].size()) + " candidates, roster has " +
                          std::to_string(roster_.size()));
      }
    }
    tiebreak_ = tiebreak ? std::move(*tiebreak)
                         : TieBreakOrder(Preference::identity(roster_.size()));
    if (tiebreak_.order().size() != roster_.size()) {
      throw RosterError("tie-break order does not cover the roster");
    }
  }

  std::size_t candidate_count() const noexcept { return roster_.size(); }
  std::size_t voter_count() const noexcept { return ballots_.size(); }
  const std::vector<Candidate>& roster() const noexcept { return roster_; }
  const std::vector<Preference>& ballots() const noexcept { return ballots_; }
  const Preference& ballot(VoterIndex v) const { return ballots_.at(v); }
  const TieBreakOrder& tiebreak() const noexcept { return tiebreak_; }

  const std::string& name(CandidateId c) const {
    check_candidate(c);
    return roster_[c].name;
  }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& c : roster_) out.push_back(c.name);
    return out;
  }
  std::optional<CandidateId> find(std::string_view name) const {
    for (const auto& c : roster_)
      if (c.name == name) return c.id;
    return std::nullopt;
  }
  CandidateId id_of(std::string_view name) const {
    if (auto id = find(name)) return *id;
    throw RosterError("unknown candidate '" + std::string(name) + "'");
  }
  void check_candidate(CandidateId c) const {
    if (c >= roster_.size()) {
      throw RosterError("unknown candidate id " + std::to_string(c));
    }
  }

  /// Copy with ballots of `voters[i]` replaced by `replacements[i]`.
  ElectionInstance replaced(std::span<const VoterIndex> voters,
                            std::span<const Preference> replacements) const {
    if (voters.size() != replacements.size()) {
      throw RosterError("replacement count mismatch");
    }
    auto ballots = ballots_;
    for (std::size_t i = 0; i < voters.size(); ++i) ballots.at(voters[i]) = replacements[i];
    return ElectionInstance(names(), std::move(ballots), tiebreak_);
  }

  friend bool operator==(const ElectionInstance&, const ElectionInstance&) = default;

 private:
  std::vector<Candidate> roster_;
  std::vector<Preference> ballots_;
  TieBreakOrder tiebreak_;
};

/// D[a][b] = #(a above b) - #(b above a).
class WeightedMajorityGraph {
 public:
  WeightedMajorityGraph(std::size_t m, std::span<const Preference> ballots)
      : m_(m), d_(m * m, 0) {
    for (const auto& p : ballots) add(p, 1);
  }

  std::size_t candidate_count() const noexcept { return m_; }
  Score margin(CandidateId a, CandidateId b) const { return d_[a * m_ + b]; }

  /// Adds (weight > 0) or removes (weight < 0) a ballot's contribution.
  void add(const Preference& p, Score weight) {
    const auto r = p.ranking();
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = i + 1; j < r.size(); ++j) {
        d_[r[i] * m_ + r[j]] += weight;
        d_[r[j] * m_ + r[i]] -= weight;
      }
    }
  }

  friend bool operator==(const WeightedMajorityGraph&,
                         const WeightedMajorityGraph&) = default;

 private:
  std::size_t m_;
  std::vector<Score> d_;
};

inline Score pairwise_margin(const ElectionInstance& e, CandidateId a, CandidateId b) {
  e.check_candidate(a);
  e.check_candidate(b);
  if (a == b) return 0;
  Score d = 0;
  for (const auto& p : e.ballots()) d += p.prefers(a, b) ? 1 : -1;
  return d;
}

inline WeightedMajorityGraph majority_graph(const ElectionInstance& e) {
  return WeightedMajorityGraph(e.candidate_count(), e.ballots());
}

}  // namespace pmd
