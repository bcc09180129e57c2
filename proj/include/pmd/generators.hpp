#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pmd/election.hpp"

namespace pmd {

/// Names a, b, c, ... for up to 26 candidates, c0, c1, ... beyond.
inline std::vector<std::string> default_names(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m; ++i)
    out.push_back(m <= 26 ? std::string(1, static_cast<char>('a' + i)) : "c" + std::to_string(i));
  return out;
}

// ---------------------------------------------------------------------------
// McGarvey

/// Target pairwise margins f(a, b): antisymmetric, zero diagonal, even.
class MarginFunction {
 public:
  explicit MarginFunction(std::size_t m) : m_(m), f_(m * m, 0) {}

  static MarginFunction from_matrix(const std::vector<std::vector<Score>>& rows) {
    MarginFunction f(rows.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
      if (rows[a].size() != rows.size()) throw ConfigurationError("margin matrix is not square");
      for (std::size_t b = 0; b < rows.size(); ++b) f.f_[a * f.m_ + b] = rows[a][b];
    }
    f.validate();
    return f;
  }

  /// Sets f(a, b) = value and f(b, a) = -value.
  void set(CandidateId a, CandidateId b, Score value) {
    if (a >= m_ || b >= m_) throw RosterError("margin index out of range");
    if (a == b && value != 0) throw ConfigurationError("f(a, a) must be 0");
    if (value % 2 != 0) throw ConfigurationError("margins must be even");
    f_[a * m_ + b] = value;
    f_[b * m_ + a] = -value;
  }

  Score operator()(CandidateId a, CandidateId b) const { return f_[a * m_ + b]; }
  std::size_t candidate_count() const noexcept { return m_; }

  void validate() const {
    for (std::size_t a = 0; a < m_; ++a) {
      if (f_[a * m_ + a] != 0) throw ConfigurationError("f(a, a) must be 0");
      for (std::size_t b = 0; b < m_; ++b) {
        if (f_[a * m_ + b] % 2 != 0) throw ConfigurationError("margins must be even");
        if (f_[a * m_ + b] != -f_[b * m_ + a]) {
          throw ConfigurationError("margins must be antisymmetric");
        }
      }
    }
  }

 private:
  std::size_t m_;
  std::vector<Score> f_;
};

/// Ballots whose majority graph is exactly f. Each pair with f(a,b) = 2t > 0
/// gets t copies of {a > b > rest, reverse(rest) > a > b}; the two cancel on
/// every pair except (a, b). Empty when f is identically zero.
inline std::vector<Preference> mcgarvey_profile(const MarginFunction& f) {
  f.validate();
  const std::size_t m = f.candidate_count();
  std::vector<Preference> out;
  for (CandidateId a = 0; a < m; ++a) {
    for (CandidateId b = 0; b < m; ++b) {
      if (a == b || f(a, b) <= 0) continue;
      std::vector<CandidateId> rest;
      for (CandidateId c = 0; c < m; ++c)
        if (c != a && c != b) rest.push_back(c);
      std::vector<CandidateId> first{a, b};
      first.insert(first.end(), rest.begin(), rest.end());
      std::vector<CandidateId> second(rest.rbegin(), rest.rend());
      second.push_back(a);
      second.push_back(b);
      for (Score t = 0; t < f(a, b) / 2; ++t) {
        out.emplace_back(first);
        out.emplace_back(second);
      }
    }
  }
  return out;
}

inline ElectionInstance mcgarvey_election(const MarginFunction& f,
                                          std::vector<std::string> names = {}) {
  if (names.empty()) names = default_names(f.candidate_count());
  return ElectionInstance(std::move(names), mcgarvey_profile(f));
}

// ---------------------------------------------------------------------------
// Impartial culture

namespace detail {
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}
}  // namespace detail

/// n independent uniform ballots; identical seeds give identical profiles.
inline ElectionInstance random_profile(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) throw ConfigurationError("random_profile needs m, n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Preference> ballots;
  ballots.reserve(n);
  std::vector<CandidateId> r(m);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < m; ++i) r[i] = static_cast<CandidateId>(i);
    for (std::size_t i = m; i > 1; --i) std::swap(r[i - 1], r[detail::bounded(rng, i)]);
    ballots.emplace_back(r);
  }
  return ElectionInstance(default_names(m), std::move(ballots));
}

// ---------------------------------------------------------------------------
// Exact cover by 3-sets -> STV

struct X3CInstance {
  std::size_t universe = 0;                         // elements 1..universe
  std::vector<std::array<std::size_t, 3>> triples;  // S_1..S_m

  void validate() const {
    if (universe == 0 || universe % 3 != 0) {
      throw ConfigurationError("X3C universe size must be a positive multiple of 3");
    }
    if (triples.empty()) throw ConfigurationError("X3C instance has no triples");
    for (const auto& t : triples) {
      for (auto v : t)
        if (v < 1 || v > universe) throw ConfigurationError("X3C element out of range");
      if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) {
        throw ConfigurationError("X3C triple repeats an element");
      }
    }
  }
};

/// Candidate layout of the STV election built from an X3C instance
/// with m triples over n elements.
struct X3CLayout {
  std::size_t m, n;
  CandidateId x() const { return 0; }
  CandidateId y() const { return 1; }
  CandidateId a(std::size_t i) const { return static_cast<CandidateId>(2 + (i - 1)); }
  CandidateId a_bar(std::size_t i) const { return static_cast<CandidateId>(2 + m + (i - 1)); }
  CandidateId b(std::size_t i) const { return static_cast<CandidateId>(2 + 2 * m + (i - 1)); }
  CandidateId b_bar(std::size_t i) const { return static_cast<CandidateId>(2 + 3 * m + (i - 1)); }
  CandidateId d(std::size_t j) const { return static_cast<CandidateId>(2 + 4 * m + j); }
  CandidateId g(std::size_t i) const { return static_cast<CandidateId>(3 + 4 * m + n + (i - 1)); }
  std::size_t size() const { return 5 * m + n + 3; }

  std::vector<std::string> names() const {
    std::vector<std::string> out{"x", "y"};
    for (std::size_t i = 1; i <= m; ++i) out.push_back("a" + std::to_string(i));
    for (std::size_t i = 1; i <= m; ++i) out.push_back("abar" + std::to_string(i));
    for (std::size_t i = 1; i <= m; ++i) out.push_back("b" + std::to_string(i));
    for (std::size_t i = 1; i <= m; ++i) out.push_back("bbar" + std::to_string(i));
    for (std::size_t j = 0; j <= n; ++j) out.push_back("d" + std::to_string(j));
    for (std::size_t i = 1; i <= m; ++i) out.push_back("g" + std::to_string(i));
    return out;
  }

  /// head followed by the remaining candidates in roster order.
  Preference ballot(std::vector<CandidateId> head) const {
    std::vector<char> used(size(), 0);
    for (auto c : head) used[c] = 1;
    for (CandidateId c = 0; c < size(); ++c)
      if (!used[c]) head.push_back(c);
    return Preference(std::move(head));
  }
};

struct StvHardInstance {
  ElectionInstance election;
  VoterIndex suspect;
  CandidateId x;
  CandidateId y;
};

/// STV election in which the suspect (reported ballot x > ...) is a possible
/// manipulator iff the X3C instance has an exact cover. Tie-break order is
/// the reversed roster with x moved last.
inline StvHardInstance x3c_to_stv(const X3CInstance& inst) {
  inst.validate();
  const std::size_t m = inst.triples.size();
  const std::size_t n = inst.universe;
  const X3CLayout L{m, n};
  const CandidateId x = L.x(), y = L.y();
  std::vector<Preference> votes;
  auto add = [&](std::size_t count, std::vector<CandidateId> head) {
    const Preference p = L.ballot(std::move(head));
    for (std::size_t i = 0; i < count; ++i) votes.push_back(p);
  };
  add(12 * m, {y, x});
  add(12 * m - 1, {x, y});
  add(10 * m + 2 * n / 3, {L.d(0), x, y});
  for (std::size_t j = 1; j <= n; ++j) add(12 * m - 2, {L.d(j), x, y});
  for (std::size_t i = 1; i <= m; ++i) add(12 * m, {L.g(i), x, y});
  for (std::size_t i = 1; i <= m; ++i) {
    add(6 * m + 4 * i - 5, {L.b(i), L.b_bar(i), x, y});
    for (auto j : inst.triples[i - 1]) add(2, {L.b(i), L.d(j), x, y});
    add(6 * m + 4 * i - 1, {L.b_bar(i), L.b(i), x, y});
    add(2, {L.b_bar(i), L.d(0), x, y});
    add(6 * m + 4 * i - 3, {L.a(i), L.g(i), x, y});
    add(1, {L.a(i), L.b(i), L.g(i), x, y});
    add(2, {L.a(i), L.a_bar(i), L.g(i), x, y});
    add(6 * m + 4 * i - 3, {L.a_bar(i), L.g(i), x, y});
    add(1, {L.a_bar(i), L.b_bar(i), L.g(i), x, y});
    add(2, {L.a_bar(i), L.a(i), L.g(i), x, y});
  }
  const VoterIndex suspect = votes.size();
  add(1, {x});

  std::vector<CandidateId> tb;
  for (CandidateId c = static_cast<CandidateId>(L.size()); c-- > 0;)
    if (c != x) tb.push_back(c);
  tb.push_back(x);
  return {ElectionInstance(L.names(), std::move(votes), TieBreakOrder(Preference(std::move(tb)))),
          suspect, x, y};
}

/// Truthful ballot for the suspect encoding `cover` (0-based triple
/// indices): for each i it supports a_i when S_i is in the cover and abar_i
/// otherwise, then x > y.
inline Preference x3c_cover_witness(const X3CInstance& inst, std::span<const std::size_t> cover) {
  const std::size_t m = inst.triples.size();
  const X3CLayout L{m, inst.universe};
  std::vector<char> in(m, 0);
  for (auto i : cover) in.at(i) = 1;
  std::vector<CandidateId> head;
  for (std::size_t i = 1; i <= m; ++i) head.push_back(in[i - 1] ? L.a(i) : L.a_bar(i));
  head.push_back(L.x());
  head.push_back(L.y());
  return L.ballot(std::move(head));
}

}  // namespace pmd
