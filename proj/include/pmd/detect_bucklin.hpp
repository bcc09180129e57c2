#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pmd/detection.hpp"
#include "pmd/max_flow.hpp"

namespace pmd {

/// Where x sits in a suspect's ballot relative to the guessed b(y); y always
/// follows x immediately.
enum class XPosition { first, level_minus_one, level, level_plus_one };

struct BucklinGuess {
  std::size_t target_level;
  XPosition x_position;
};

namespace detail {

/// Slots a suspect ballot of the given shape needs from candidates other
/// than x and y: `top` inside the first L-1 positions and `at_level` at
/// position L itself.
struct BucklinShape {
  std::size_t top;
  std::size_t at_level;
  bool y_counts;  // y lands in the top L
};

inline std::optional<BucklinShape> bucklin_shape(XPosition pos, std::size_t level,
                                                 std::size_t m) {
  switch (pos) {
    case XPosition::level_minus_one:  // ... x y | (x at L-1, y at L)
      if (level < 2) return std::nullopt;
      return BucklinShape{level - 2, 0, true};
    case XPosition::first:  // x y ... z |
      if (level < 3) return std::nullopt;
      return BucklinShape{level - 3, 1, true};
    case XPosition::level:  // ... x | y
      if (level + 1 > m) return std::nullopt;
      return BucklinShape{level - 1, 0, false};
    case XPosition::level_plus_one:  // ... z | x y
      if (level + 2 > m) return std::nullopt;
      return BucklinShape{level - 1, 1, false};
  }
  return std::nullopt;
}

}  // namespace detail

/// Bucklin, any coalition size. For each guessed level L = b(y) and each
/// split of the coalition over the four x-position cases, the top-L slots of
/// all suspect ballots are filled by max flow:
///  - a candidate z that y beats on ties must stay below the half-way mark
///    at level L-1, so it is capped inside positions 1..L-1 but free at L;
///  - any other z (x included) is capped inside positions 1..L;
///  - no candidate appears twice in one ballot.
/// The flow saturates exactly when such ballots exist.
inline DetectionVerdict cpmw_bucklin(const ElectionInstance& e,
                                     std::span<const VoterIndex> suspects, CandidateId y) {
  const auto rule = VotingRule::bucklin();
  const CandidateId x = winner(e, rule);
  check_actual_winner(e, x, y);
  const auto m_set = normalize_suspects(e, suspects);
  const ReplayContext ctx(e, rule, m_set);
  const auto& ext = ctx.external_counts();
  const auto& tb = e.tiebreak();
  const std::size_t m = e.candidate_count();
  const std::size_t c = m_set.size();
  const Score n = static_cast<Score>(e.voter_count());
  const Score reach = (n + 1) / 2;  // 2*count >= n
  const Score below = (n - 1) / 2;  // 2*count < n

  DetectionVerdict v;
  v.current_winner = x;
  v.coalition = m_set;
  if (c == 0) return v;

  std::vector<CandidateId> others;
  for (CandidateId z = 0; z < m; ++z)
    if (z != x && z != y) others.push_back(z);
  const std::size_t k = others.size();
  constexpr std::array<XPosition, 4> cases{XPosition::level_minus_one, XPosition::first,
                                           XPosition::level, XPosition::level_plus_one};

  for (std::size_t level = 1; level <= m; ++level) {
    const Score need_y = std::max<Score>(0, reach - ext.count(y, level));
    if (need_y > static_cast<Score>(c)) continue;
    std::vector<Score> cap(m, 0);
    std::vector<char> weak(m, 0);
    bool ok = true;
    for (CandidateId z = 0; z < m; ++z) {
      if (z == y) continue;
      weak[z] = tb.prefers(y, z);
      const std::size_t lz = weak[z] ? level - 1 : level;
      cap[z] = below - (lz == 0 ? 0 : ext.count(z, lz));
      if (cap[z] < 0) ok = false;
    }
    if (!ok) continue;
    std::array<std::optional<detail::BucklinShape>, 4> shape;
    for (std::size_t i = 0; i < 4; ++i) shape[i] = detail::bucklin_shape(cases[i], level, m);

    std::array<std::size_t, 4> split{};
    for (split[0] = 0; split[0] <= c; ++split[0]) {
      for (split[1] = 0; split[0] + split[1] <= c; ++split[1]) {
        for (split[2] = 0; split[0] + split[1] + split[2] <= c; ++split[2]) {
          split[3] = c - split[0] - split[1] - split[2];
          bool valid = true;
          for (std::size_t i = 0; i < 4; ++i)
            if (split[i] > 0 && !shape[i]) valid = false;
          if (!valid) continue;
          if (static_cast<Score>(split[0] + split[1]) < need_y) continue;
          const Score x_use = static_cast<Score>(split[0] + split[1]) +
                              (weak[x] ? 0 : static_cast<Score>(split[2]));
          if (x_use > cap[x]) continue;

          // ballot j's case
          std::vector<std::size_t> kind;
          for (std::size_t i = 0; i < 4; ++i) kind.insert(kind.end(), split[i], i);

          const std::size_t src = 0, sink = 1, a0 = 2, f0 = a0 + c, p0 = f0 + c,
                            z0 = p0 + c * k;
          FlowNetwork net(z0 + k);
          std::vector<std::size_t> counted(c * k), freed(c * k, SIZE_MAX);
          FlowNetwork::Cap demand = 0;
          for (std::size_t j = 0; j < c; ++j) {
            const auto& sh = *shape[kind[j]];
            const auto d = static_cast<FlowNetwork::Cap>(sh.top + sh.at_level);
            demand += d;
            net.add_edge(src, a0 + j, d);
            net.add_edge(f0 + j, sink, static_cast<FlowNetwork::Cap>(sh.at_level));
            for (std::size_t o = 0; o < k; ++o) {
              const std::size_t node = p0 + j * k + o;
              net.add_edge(a0 + j, node, 1);
              counted[j * k + o] = net.add_edge(node, z0 + o, 1);
              if (weak[others[o]]) freed[j * k + o] = net.add_edge(node, f0 + j, 1);
            }
          }
          for (std::size_t o = 0; o < k; ++o) net.add_edge(z0 + o, sink, cap[others[o]]);
          if (net.max_flow(src, sink) != demand) continue;

          std::vector<Preference> ballots;
          for (std::size_t j = 0; j < c; ++j) {
            const auto& sh = *shape[kind[j]];
            std::vector<CandidateId> top, slot;
            for (std::size_t o = 0; o < k; ++o) {
              if (net.flow(counted[j * k + o]) > 0) top.push_back(others[o]);
              if (freed[j * k + o] != SIZE_MAX && net.flow(freed[j * k + o]) > 0)
                slot.push_back(others[o]);
            }
            if (sh.at_level == 1 && slot.empty()) {
              slot.push_back(top.back());
              top.pop_back();
            }
            std::vector<CandidateId> head;
            switch (cases[kind[j]]) {
              case XPosition::level_minus_one:
                head = top;
                head.insert(head.end(), {x, y});
                break;
              case XPosition::first:
                head = {x, y};
                head.insert(head.end(), top.begin(), top.end());
                head.push_back(slot.front());
                break;
              case XPosition::level:
                head = top;
                head.insert(head.end(), {x, y});
                break;
              case XPosition::level_plus_one:
                head = top;
                head.push_back(slot.front());
                head.insert(head.end(), {x, y});
                break;
            }
            ballots.push_back(complete_in_tiebreak_order(e, std::move(head)));
          }
          ++v.replays;
          if (ctx.winner(ballots) == y) {
            v.yes = true;
            v.actual_winner = y;
            v.witness = make_witness(m_set, ballots);
            return v;
          }
        }
      }
    }
  }
  return v;
}

inline DetectionVerdict cpm_bucklin(const ElectionInstance& e,
                                    std::span<const VoterIndex> suspects) {
  const CandidateId x = winner(e, VotingRule::bucklin());
  DetectionVerdict none;
  none.current_winner = x;
  none.coalition = normalize_suspects(e, suspects);
  for (CandidateId y : e.tiebreak().order().ranking()) {
    if (y == x) continue;
    auto v = cpmw_bucklin(e, suspects, y);
    none.replays += v.replays;
    if (v.yes) {
      v.replays = none.replays;
      return v;
    }
  }
  return none;
}

}  // namespace pmd
