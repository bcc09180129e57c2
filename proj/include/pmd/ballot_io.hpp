#pragma once

// Text format:
//
//   # comment (anywhere; runs to end of line)
//   candidates: a,b,c
//   tiebreak: b,a,c          (optional, defaults to the candidates line)
//   2x b>a>c                 (optional "<count>x " prefix, count >= 1)
//   a>c>b
//
// Voters are numbered from 0 in file order after expanding counts.

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pmd/election.hpp"

namespace pmd {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

/// Parses "name>name>..." into a full ranking over the roster.
inline Preference parse_ranking(std::string_view text, const std::vector<std::string>& names,
                                std::size_t line) {
  std::vector<CandidateId> order;
  std::vector<char> seen(names.size(), 0);
  for (auto tok : split(text, '>')) {
    if (tok.empty()) throw ParseError(line, "empty candidate name in ballot");
    std::optional<CandidateId> id;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == tok) id = static_cast<CandidateId>(i);
    if (!id) throw ParseError(line, "unknown candidate '" + std::string(tok) + "'");
    if (seen[*id]) throw ParseError(line, "candidate '" + std::string(tok) + "' appears twice");
    seen[*id] = 1;
    order.push_back(*id);
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!seen[i]) throw ParseError(line, "ballot does not rank '" + names[i] + "'");
  return Preference(std::move(order));
}

}  // namespace detail

inline ElectionInstance parse_election(std::string_view text) {
  std::vector<std::string> names;
  std::optional<TieBreakOrder> tiebreak;
  std::vector<Preference> ballots;
  bool have_names = false;
  std::size_t line_no = 0;

  for (bool more = true; more;) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    more = nl != std::string_view::npos;
    if (more) text.remove_prefix(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.starts_with("candidates:")) {
      if (have_names) throw ParseError(line_no, "duplicate candidates line");
      for (auto tok : detail::split(line.substr(11), ',')) {
        if (tok.empty()) throw ParseError(line_no, "empty candidate name");
        if (tok.find_first_of(">, \t") != std::string_view::npos) {
          throw ParseError(line_no, "invalid candidate name '" + std::string(tok) + "'");
        }
        for (const auto& n : names)
          if (n == tok) throw ParseError(line_no, "duplicate candidate '" + std::string(tok) + "'");
        names.emplace_back(tok);
      }
      have_names = true;
      continue;
    }
    if (!have_names) throw ParseError(line_no, "expected 'candidates:' header first");
    if (line.starts_with("tiebreak:")) {
      if (tiebreak) throw ParseError(line_no, "duplicate tiebreak line");
      std::string joined;
      for (auto tok : detail::split(line.substr(9), ',')) {
        if (!joined.empty()) joined += '>';
        joined += tok;
      }
      tiebreak.emplace(detail::parse_ranking(joined, names, line_no));
      continue;
    }

    std::size_t count = 1;
    std::size_t digits = 0;
    while (digits < line.size() && line[digits] >= '0' && line[digits] <= '9') ++digits;
    if (digits > 0 && digits < line.size() && line[digits] == 'x' &&
        (digits + 1 == line.size() || line[digits + 1] == ' ' || line[digits + 1] == '\t')) {
      auto [p, ec] = std::from_chars(line.data(), line.data() + digits, count);
      if (ec != std::errc{}) throw ParseError(line_no, "bad ballot count");
      if (count == 0) throw ParseError(line_no, "ballot count must be at least 1");
      line = detail::trim(line.substr(digits + 1));
    }
    const Preference p = detail::parse_ranking(line, names, line_no);
    ballots.insert(ballots.end(), count, p);
  }

  if (!have_names) throw ParseError(line_no, "missing 'candidates:' header");
  if (ballots.empty()) throw ParseError(line_no, "election has no ballots");
  try {
    return ElectionInstance(std::move(names), std::move(ballots), std::move(tiebreak));
  } catch (const RosterError& err) {
    throw ParseError(line_no, err.what());
  }
}

inline std::string render_ranking(const ElectionInstance& e, const Preference& p) {
  std::string out;
  for (std::size_t r = 0; r < p.size(); ++r) {
    if (r) out += '>';
    out += e.name(p[r]);
  }
  return out;
}

/// Inverse of parse_election; consecutive equal ballots share a count prefix.
inline std::string render_election(const ElectionInstance& e) {
  std::ostringstream out;
  out << "candidates: ";
  for (std::size_t i = 0; i < e.candidate_count(); ++i)
    out << (i ? "," : "") << e.name(static_cast<CandidateId>(i));
  out << "\ntiebreak: ";
  const auto& tb = e.tiebreak().order();
  for (std::size_t i = 0; i < tb.size(); ++i) out << (i ? "," : "") << e.name(tb[i]);
  out << '\n';
  const auto& b = e.ballots();
  for (std::size_t i = 0; i < b.size();) {
    std::size_t j = i;
    while (j < b.size() && b[j] == b[i]) ++j;
    if (j - i > 1) out << (j - i) << "x ";
    out << render_ranking(e, b[i]) << '\n';
    i = j;
  }
  return out.str();
}

}  // namespace pmd
