#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmd/ballot_io.hpp"
#include "pmd/detection.hpp"

namespace pmd {

struct BudgetStatus {
  std::uint64_t max_replays = SearchBudget{}.max_replays;
  bool forced = false;
  bool exceeded = false;
  std::optional<double> required;

  friend bool operator==(const BudgetStatus&, const BudgetStatus&) = default;
};

struct ReportWitness {
  VoterIndex voter = 0;
  std::string ballot;  // "a>b>c"

  friend bool operator==(const ReportWitness&, const ReportWitness&) = default;
};

/// Result of one CLI command, serializable to and from JSON.
struct Report {
  std::string problem;  // cpmw | cpm | cpmsw | cpms | winner | oracle | gen
  std::string rule;
  std::optional<bool> verdict;  // unset for winner / gen
  std::optional<std::string> current_winner;
  std::vector<ReportWitness> witness;
  std::optional<std::string> witness_actual_winner;
  std::vector<VoterIndex> coalition;
  std::optional<std::string> route;
  std::uint64_t replays = 0;
  double elapsed_ms = 0;
  BudgetStatus budget;
  std::map<std::string, Score> scores;  // winner: per-candidate score
  std::optional<std::string> election;  // gen: generated file
  std::optional<std::string> error;

  friend bool operator==(const Report&, const Report&) = default;
};

inline void to_json(nlohmann::json& j, const BudgetStatus& b) {
  j = {{"max_replays", b.max_replays}, {"forced", b.forced}, {"exceeded", b.exceeded}};
  if (b.required) j["required"] = *b.required;
}
inline void from_json(const nlohmann::json& j, BudgetStatus& b) {
  j.at("max_replays").get_to(b.max_replays);
  j.at("forced").get_to(b.forced);
  j.at("exceeded").get_to(b.exceeded);
  b.required = j.contains("required") ? std::optional<double>(j["required"].get<double>())
                                      : std::nullopt;
}

inline void to_json(nlohmann::json& j, const ReportWitness& w) {
  j = {{"voter", w.voter}, {"ballot", w.ballot}};
}
inline void from_json(const nlohmann::json& j, ReportWitness& w) {
  j.at("voter").get_to(w.voter);
  j.at("ballot").get_to(w.ballot);
}

namespace detail {
template <class T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}
template <class T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j[key].is_null()) v = j[key].get<T>();
  else v.reset();
}
}  // namespace detail

inline void to_json(nlohmann::json& j, const Report& r) {
  j = nlohmann::json::object();
  j["problem"] = r.problem;
  j["rule"] = r.rule;
  if (r.verdict) j["verdict"] = *r.verdict ? "YES" : "NO";
  else j["verdict"] = nullptr;
  detail::put_optional(j, "current_winner", r.current_winner);
  j["witness"] = r.witness;
  detail::put_optional(j, "witness_actual_winner", r.witness_actual_winner);
  j["coalition"] = r.coalition;
  detail::put_optional(j, "route", r.route);
  j["replays"] = r.replays;
  j["timing"] = {{"elapsed_ms", r.elapsed_ms}};
  j["budget"] = r.budget;
  j["scores"] = r.scores;
  detail::put_optional(j, "election", r.election);
  detail::put_optional(j, "error", r.error);
}

inline void from_json(const nlohmann::json& j, Report& r) {
  j.at("problem").get_to(r.problem);
  j.at("rule").get_to(r.rule);
  if (j.at("verdict").is_null()) r.verdict.reset();
  else r.verdict = j["verdict"].get<std::string>() == "YES";
  detail::get_optional(j, "current_winner", r.current_winner);
  j.at("witness").get_to(r.witness);
  detail::get_optional(j, "witness_actual_winner", r.witness_actual_winner);
  j.at("coalition").get_to(r.coalition);
  detail::get_optional(j, "route", r.route);
  j.at("replays").get_to(r.replays);
  j.at("timing").at("elapsed_ms").get_to(r.elapsed_ms);
  j.at("budget").get_to(r.budget);
  j.at("scores").get_to(r.scores);
  detail::get_optional(j, "election", r.election);
  detail::get_optional(j, "error", r.error);
}

/// Fills the verdict-related fields of `r` from a detection result.
inline void record_verdict(Report& r, const ElectionInstance& e, const DetectionVerdict& v) {
  r.verdict = v.yes;
  r.current_winner = e.name(v.current_winner);
  r.witness.clear();
  for (const auto& w : v.witness) r.witness.push_back({w.voter, render_ranking(e, w.preference)});
  r.witness_actual_winner = v.actual_winner ? std::optional(e.name(*v.actual_winner)) : std::nullopt;
  r.coalition = v.coalition;
  r.route = to_string(v.route);
  r.replays = v.replays;
}

/// Plain-text rendering for terminals.
inline std::string render_text(const Report& r) {
  std::ostringstream out;
  if (r.error) {
    out << "error: " << *r.error << '\n';
    return out.str();
  }
  if (r.election) return *r.election;
  if (r.problem == "winner") {
    out << *r.current_winner << '\n';
    return out.str();
  }
  out << "verdict: " << (r.verdict.value_or(false) ? "YES" : "NO") << '\n';
  if (r.current_winner) out << "current winner: " << *r.current_winner << '\n';
  if (r.witness_actual_winner) out << "actual winner: " << *r.witness_actual_winner << '\n';
  if (!r.coalition.empty()) {
    out << "coalition:";
    for (auto v : r.coalition) out << ' ' << v;
    out << '\n';
  }
  for (const auto& w : r.witness) out << "voter " << w.voter << ": " << w.ballot << '\n';
  if (r.route) out << "route: " << *r.route << '\n';
  return out.str();
}

}  // namespace pmd
