#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pmd/election.hpp"

namespace pmd {

/// Positional scoring vector alpha_1 >= ... >= alpha_m with alpha_1 > alpha_m.
/// A length-1 vector is accepted as the degenerate single-candidate case.
class ScoringVector {
 public:
  explicit ScoringVector(std::vector<Score> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.empty()) throw ConfigurationError("scoring vector is empty");
    for (std::size_t i = 1; i < alphas_.size(); ++i) {
      if (alphas_[i] > alphas_[i - 1]) {
        throw ConfigurationError("scoring vector must be non-increasing");
      }
    }
    if (alphas_.size() > 1 && alphas_.front() == alphas_.back()) {
      throw ConfigurationError("scoring vector must have alpha_1 > alpha_m");
    }
  }

  static ScoringVector borda(std::size_t m) {
    std::vector<Score> a(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = static_cast<Score>(m - 1 - i);
    return ScoringVector(std::move(a));
  }
  static ScoringVector k_approval(std::size_t m, std::size_t k) {
    if (m == 1) return ScoringVector({1});
    if (k == 0 || k >= m) {
      throw ConfigurationError("k-approval needs 1 <= k < m (k=" + std::to_string(k) +
                               ", m=" + std::to_string(m) + ")");
    }
    std::vector<Score> a(m, 0);
    for (std::size_t i = 0; i < k; ++i) a[i] = 1;
    return ScoringVector(std::move(a));
  }
  static ScoringVector plurality(std::size_t m) { return k_approval(m, 1); }
  static ScoringVector veto(std::size_t m) { return k_approval(m, m == 1 ? 1 : m - 1); }

  std::size_t size() const noexcept { return alphas_.size(); }
  const std::vector<Score>& alphas() const noexcept { return alphas_; }
  /// Score for 0-based rank.
  Score operator[](std::size_t rank0) const { return alphas_[rank0]; }

  /// alpha_1 - alpha_2 <= alpha_i - alpha_{i+1} for all i.
  bool is_convex() const {
    if (alphas_.size() < 2) return true;
    const Score first_gap = alphas_[0] - alphas_[1];
    for (std::size_t i = 1; i + 1 < alphas_.size(); ++i) {
      if (alphas_[i] - alphas_[i + 1] < first_gap) return false;
    }
    return true;
  }

  /// alpha_1 > alpha_2 = ... = alpha_m, i.e. equivalent to plurality.
  bool is_plurality_like() const {
    if (alphas_.size() < 2 || alphas_[0] == alphas_[1]) return false;
    for (std::size_t i = 2; i < alphas_.size(); ++i)
      if (alphas_[i] != alphas_[1]) return false;
    return true;
  }

  friend bool operator==(const ScoringVector&, const ScoringVector&) = default;

 private:
  std::vector<Score> alphas_;
};

struct MaximinRule {
  friend bool operator==(MaximinRule, MaximinRule) = default;
};
struct BucklinRule {
  friend bool operator==(BucklinRule, BucklinRule) = default;
};
struct StvRule {
  friend bool operator==(StvRule, StvRule) = default;
};

enum class RuleKind { scoring, maximin, bucklin, stv };

class VotingRule {
 public:
  using Variant = std::variant<ScoringVector, MaximinRule, BucklinRule, StvRule>;

  static VotingRule scoring(ScoringVector v, std::string label = {}) {
    if (label.empty()) {
      label = "scoring:";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) label += ',';
        label += std::to_string(v[i]);
      }
    }
    return VotingRule(std::move(v), std::move(label));
  }
  static VotingRule maximin() { return VotingRule(MaximinRule{}, "maximin"); }
  static VotingRule bucklin() { return VotingRule(BucklinRule{}, "bucklin"); }
  static VotingRule stv() { return VotingRule(StvRule{}, "stv"); }

  /// borda | plurality | veto | approval:<k> | scoring:<a1,a2,...> | maximin | bucklin | stv
  static VotingRule parse(std::string_view text, std::size_t m) {
    auto int_of = [&](std::string_view s) {
      Score v{};
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size()) {
        throw ConfigurationError("bad integer '" + std::string(s) + "' in rule '" +
                                 std::string(text) + "'");
      }
      return v;
    };
    const std::string label(text);
    if (text == "borda") return scoring(ScoringVector::borda(m), label);
    if (text == "plurality") return scoring(ScoringVector::plurality(m), label);
    if (text == "veto") return scoring(ScoringVector::veto(m), label);
    if (text == "maximin") return maximin();
    if (text == "bucklin") return bucklin();
    if (text == "stv") return stv();
    if (text.starts_with("approval:")) {
      const Score k = int_of(text.substr(9));
      if (k <= 0) throw ConfigurationError("approval:<k> needs k >= 1");
      return scoring(ScoringVector::k_approval(m, static_cast<std::size_t>(k)), label);
    }
    if (text.starts_with("scoring:")) {
      std::vector<Score> alphas;
      std::string_view rest = text.substr(8);
      while (true) {
        const auto comma = rest.find(',');
        alphas.push_back(int_of(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
      if (alphas.size() != m) {
        throw ConfigurationError("scoring vector has " + std::to_string(alphas.size()) +
                                 " entries, roster has " + std::to_string(m));
      }
      return scoring(ScoringVector(std::move(alphas)), label);
    }
    throw ConfigurationError("unknown rule '" + label + "'");
  }

  RuleKind kind() const noexcept { return static_cast<RuleKind>(rule_.index()); }
  bool is_scoring() const noexcept { return kind() == RuleKind::scoring; }
  const ScoringVector& scoring_vector() const {
    if (!is_scoring()) throw InvalidQueryError("rule '" + label_ + "' is not a scoring rule");
    return std::get<ScoringVector>(rule_);
  }
  const Variant& variant() const noexcept { return rule_; }
  const std::string& name() const noexcept { return label_; }

  /// Scoring vector length must match the roster.
  void check_applicable(std::size_t m) const {
    if (is_scoring() && scoring_vector().size() != m) {
      throw ConfigurationError("scoring vector length " +
                               std::to_string(scoring_vector().size()) +
                               " does not match roster size " + std::to_string(m));
    }
  }

  friend bool operator==(const VotingRule& a, const VotingRule& b) {
    return a.rule_ == b.rule_;
  }

 private:
  VotingRule(Variant r, std::string label) : rule_(std::move(r)), label_(std::move(label)) {}
  Variant rule_;
  std::string label_;
};

/// Per-candidate score (points, maximin score or Bucklin level, by rule).
struct ScoreTable {
  std::vector<Score> values;
  Score operator[](CandidateId c) const { return values.at(c); }
  std::size_t size() const noexcept { return values.size(); }
};

// ---------------------------------------------------------------------------
// Aggregate-level winner determination, shared by the public entry points and
// by the replay machinery in detection.hpp.

/// Max-score candidates; empty input is not allowed.
inline std::vector<CandidateId> argmax(std::span<const Score> s) {
  std::vector<CandidateId> out;
  Score best = s[0];
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (s[c] > best) {
      best = s[c];
      out.clear();
    }
    if (s[c] == best) out.push_back(static_cast<CandidateId>(c));
  }
  return out;
}

inline std::vector<CandidateId> argmin(std::span<const Score> s) {
  std::vector<CandidateId> out;
  Score best = s[0];
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (s[c] < best) {
      best = s[c];
      out.clear();
    }
    if (s[c] == best) out.push_back(static_cast<CandidateId>(c));
  }
  return out;
}

inline std::vector<Score> maximin_scores(const WeightedMajorityGraph& g) {
  const std::size_t m = g.candidate_count();
  std::vector<Score> s(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    bool first = true;
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const Score d = g.margin(static_cast<CandidateId>(a), static_cast<CandidateId>(b));
      if (first || d < s[a]) s[a] = d;
      first = false;
    }
  }
  return s;
}

/// count(c, l) = number of ballots ranking c within the top l positions.
class TopCounts {
 public:
  TopCounts() = default;
  explicit TopCounts(std::size_t m) : m_(m), cnt_(m * (m + 1), 0) {}
  TopCounts(std::size_t m, std::span<const Preference> ballots) : TopCounts(m) {
    for (const auto& p : ballots) add(p, 1);
  }

  void add(const Preference& p, Score weight) {
    for (std::size_t r = 0; r < p.size(); ++r) {
      // c at rank r counts for every level l > r
      const CandidateId c = p[r];
      for (std::size_t l = r + 1; l <= m_; ++l) cnt_[c * (m_ + 1) + l] += weight;
    }
    voters_ += weight;
  }

  Score count(CandidateId c, std::size_t level) const { return cnt_[c * (m_ + 1) + level]; }
  Score voters() const noexcept { return voters_; }
  std::size_t candidate_count() const noexcept { return m_; }

  /// Least l with 2*count(c, l) >= n.
  Score level(CandidateId c) const {
    for (std::size_t l = 1; l <= m_; ++l)
      if (2 * count(c, l) >= voters_) return static_cast<Score>(l);
    return static_cast<Score>(m_);
  }
  std::vector<Score> levels() const {
    std::vector<Score> out(m_);
    for (std::size_t c = 0; c < m_; ++c) out[c] = level(static_cast<CandidateId>(c));
    return out;
  }

 private:
  std::size_t m_ = 0;
  Score voters_ = 0;
  std::vector<Score> cnt_;
};

struct WeightedBallot {
  const Preference* ballot;
  Score weight;
};

/// Eliminated candidates in order, followed by the survivor.
/// Among least-plurality candidates the tie-break-last one is eliminated.
inline std::vector<CandidateId> stv_run(std::size_t m, std::span<const WeightedBallot> ballots,
                                        const TieBreakOrder& tb) {
  std::vector<char> alive(m, 1);
  std::vector<std::size_t> cursor(ballots.size(), 0);
  std::vector<CandidateId> order;
  order.reserve(m);
  std::vector<Score> tally(m);
  std::vector<CandidateId> tied;
  for (std::size_t round = 0; round + 1 < m; ++round) {
    std::fill(tally.begin(), tally.end(), 0);
    for (std::size_t i = 0; i < ballots.size(); ++i) {
      const Preference& p = *ballots[i].ballot;
      while (!alive[p[cursor[i]]]) ++cursor[i];
      tally[p[cursor[i]]] += ballots[i].weight;
    }
    Score low = 0;
    bool any = false;
    for (std::size_t c = 0; c < m; ++c) {
      if (alive[c] && (!any || tally[c] < low)) {
        low = tally[c];
        any = true;
      }
    }
    tied.clear();
    for (std::size_t c = 0; c < m; ++c)
      if (alive[c] && tally[c] == low) tied.push_back(static_cast<CandidateId>(c));
    const CandidateId out = tb.last_of(tied);
    alive[out] = 0;
    order.push_back(out);
  }
  for (std::size_t c = 0; c < m; ++c)
    if (alive[c]) order.push_back(static_cast<CandidateId>(c));
  return order;
}

// ---------------------------------------------------------------------------

inline ScoreTable evaluate_scores(const ElectionInstance& e, const ScoringVector& v) {
  if (v.size() != e.candidate_count()) {
    throw ConfigurationError("scoring vector length " + std::to_string(v.size()) +
                             " does not match roster size " +
                             std::to_string(e.candidate_count()));
  }
  ScoreTable t{std::vector<Score>(e.candidate_count(), 0)};
  for (const auto& p : e.ballots())
    for (std::size_t r = 0; r < p.size(); ++r) t.values[p[r]] += v[r];
  return t;
}

inline Score maximin_score(const ElectionInstance& e, CandidateId c) {
  e.check_candidate(c);
  if (e.candidate_count() < 2) {
    throw ConfigurationError("maximin score is undefined for a single-candidate roster");
  }
  return maximin_scores(majority_graph(e))[c];
}

inline Score bucklin_score(const ElectionInstance& e, CandidateId c) {
  e.check_candidate(c);
  return TopCounts(e.candidate_count(), e.ballots()).level(c);
}

inline std::vector<CandidateId> stv_elimination_order(const ElectionInstance& e) {
  std::vector<WeightedBallot> wb;
  wb.reserve(e.voter_count());
  for (const auto& p : e.ballots()) wb.push_back({&p, 1});
  return stv_run(e.candidate_count(), wb, e.tiebreak());
}

/// Per-candidate scores under `rule` (Bucklin: levels; STV: 1 for the
/// survivor and 0 otherwise).
inline ScoreTable score_table(const ElectionInstance& e, const VotingRule& rule) {
  rule.check_applicable(e.candidate_count());
  switch (rule.kind()) {
    case RuleKind::scoring:
      return evaluate_scores(e, rule.scoring_vector());
    case RuleKind::maximin:
      if (e.candidate_count() < 2) return {{0}};
      return {maximin_scores(majority_graph(e))};
    case RuleKind::bucklin:
      return {TopCounts(e.candidate_count(), e.ballots()).levels()};
    case RuleKind::stv: {
      ScoreTable t{std::vector<Score>(e.candidate_count(), 0)};
      t.values[stv_elimination_order(e).back()] = 1;
      return t;
    }
  }
  return {};
}

/// The rule's correspondence before tie-breaking.
inline std::vector<CandidateId> co_winners(const ElectionInstance& e, const VotingRule& rule) {
  const ScoreTable t = score_table(e, rule);
  if (rule.kind() == RuleKind::bucklin) return argmin(t.values);
  return argmax(t.values);
}

inline CandidateId winner(const ElectionInstance& e, const VotingRule& rule) {
  return e.tiebreak().first_of(co_winners(e, rule));
}

}  // namespace pmd
