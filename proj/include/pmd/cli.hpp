#pragma once

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmd/ballot_io.hpp"
#include "pmd/dispatch.hpp"
#include "pmd/generators.hpp"
#include "pmd/oracle.hpp"
#include "pmd/report.hpp"

namespace pmd {

struct CommandResult {
  Report report;
  int exit_code = 0;  // 0 YES / success, 1 NO, 2 error
  std::string output;  // text or JSON, as requested
};

namespace detail {

struct CliOptions {
  std::string file = "-";
  std::string rule = "borda";
  std::optional<std::string> suspects;
  std::optional<std::string> actual_winner;
  std::optional<std::size_t> bound;
  bool force = false;
  bool json = false;
  // gen
  std::string kind;
  std::size_t m = 3, n = 5;
  std::uint64_t seed = 0;
  std::string margins;
  std::size_t universe = 0;
  std::string triples;
};

inline std::vector<VoterIndex> parse_index_list(const std::string& s) {
  std::vector<VoterIndex> out;
  if (trim(s).empty()) return out;
  for (auto tok : split(s, ',')) {
    VoterIndex v{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || p != tok.data() + tok.size()) {
      throw ConfigurationError("bad voter index '" + std::string(tok) + "'");
    }
    out.push_back(v);
  }
  return out;
}

inline std::vector<std::vector<Score>> parse_matrix(const std::string& s) {
  std::vector<std::vector<Score>> rows;
  for (auto row : split(s, ';')) {
    rows.emplace_back();
    for (auto tok : split(row, ',')) {
      Score v{};
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc{} || p != tok.data() + tok.size()) {
        throw ConfigurationError("bad matrix entry '" + std::string(tok) + "'");
      }
      rows.back().push_back(v);
    }
  }
  return rows;
}

inline X3CInstance parse_x3c(std::size_t universe, const std::string& s) {
  X3CInstance inst{universe, {}};
  for (auto row : split(s, ';')) {
    const auto idx = parse_index_list(std::string(row));
    if (idx.size() != 3) throw ConfigurationError("each X3C triple needs exactly 3 elements");
    inst.triples.push_back({idx[0], idx[1], idx[2]});
  }
  return inst;
}

inline ElectionInstance load_election(const std::string& file, std::istream& in) {
  std::string text;
  if (file == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream f(file);
    if (!f) throw ConfigurationError("cannot open '" + file + "'");
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  return parse_election(text);
}

inline void run_gen(const CliOptions& o, Report& r) {
  if (o.kind == "random") {
    r.election = render_election(random_profile(o.m, o.n, o.seed));
  } else if (o.kind == "mcgarvey") {
    if (o.margins.empty()) throw ConfigurationError("gen mcgarvey needs --margins");
    const auto f = MarginFunction::from_matrix(parse_matrix(o.margins));
    if (mcgarvey_profile(f).empty()) {
      throw ConfigurationError("all margins are zero; an election needs at least one ballot");
    }
    r.election = render_election(mcgarvey_election(f));
  } else if (o.kind == "x3c") {
    const auto hard = x3c_to_stv(parse_x3c(o.universe, o.triples));
    r.election = "# suspect: " + std::to_string(hard.suspect) + ", x: " +
                 hard.election.name(hard.x) + ", y: " + hard.election.name(hard.y) + "\n" +
                 render_election(hard.election);
    r.coalition = {hard.suspect};
  } else {
    throw ConfigurationError("gen kind must be random, mcgarvey or x3c");
  }
}

inline int run_detection(const std::string& cmd, const CliOptions& o, std::istream& in,
                         Report& r) {
  const bool has_suspects = o.suspects.has_value();
  const bool has_y = o.actual_winner.has_value();
  const bool has_k = o.bound.has_value();
  auto conflict = [](const std::string& what) { throw ConfigurationError(what); };
  if (cmd == "winner" && (has_suspects || has_y || has_k)) {
    conflict("winner takes no --suspects, --actual-winner or -k");
  }
  if (cmd == "cpmw" && (!has_suspects || !has_y || has_k)) {
    conflict("cpmw needs --suspects and --actual-winner, and no -k");
  }
  if (cmd == "cpm" && (!has_suspects || has_y || has_k)) {
    conflict("cpm needs --suspects, and no --actual-winner or -k");
  }
  if (cmd == "cpmsw" && (has_suspects || !has_y || !has_k)) {
    conflict("cpmsw needs -k and --actual-winner, and no --suspects");
  }
  if (cmd == "cpms" && (has_suspects || has_y || !has_k)) {
    conflict("cpms needs -k, and no --suspects or --actual-winner");
  }
  if (cmd == "oracle" && has_suspects == has_k) {
    conflict("oracle needs exactly one of --suspects and -k");
  }

  const ElectionInstance e = load_election(o.file, in);
  const VotingRule rule = VotingRule::parse(o.rule, e.candidate_count());
  rule.check_applicable(e.candidate_count());
  r.rule = rule.name();

  if (cmd == "winner") {
    const auto t = score_table(e, rule);
    for (CandidateId c = 0; c < e.candidate_count(); ++c) r.scores[e.name(c)] = t[c];
    r.current_winner = e.name(winner(e, rule));
    return 0;
  }

  const SearchBudget budget{r.budget.max_replays, o.force};
  DetectionQuery q;
  if (has_suspects) q.suspects = parse_index_list(*o.suspects);
  if (has_y) q.actual_winner = e.id_of(*o.actual_winner);
  q.bound = o.bound;

  DetectionVerdict v;
  if (cmd == "oracle") {
    if (has_k) {
      v = search_coalitions(e, rule, *q.bound, q.actual_winner, {false, budget}, oracle_decider())
              .verdict;
    } else {
      v = q.actual_winner ? oracle_cpmw(e, rule, q.suspects, *q.actual_winner, budget)
                          : oracle_cpm(e, rule, q.suspects, budget);
    }
    v.route = Route::exhaustive;
    if (!verify_witness(e, rule, v)) throw std::logic_error("internal error: unsound witness");
  } else {
    v = detect(e, rule, q, budget);
  }
  record_verdict(r, e, v);
  return v.yes ? 0 : 1;
}

}  // namespace detail

/// Runs one command line (without the program name). Election files are
/// read from the path argument, or from `in` when the path is "-" or absent.
inline CommandResult run_command(const std::vector<std::string>& args,
                                 std::istream& in = std::cin) {
  CLI::App app{"possible manipulator detection", "pmd"};
  app.require_subcommand(1);
  detail::CliOptions o;

  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "print a JSON report");
    sub->add_flag("--force", o.force, "ignore the exhaustive-search budget");
  };
  auto detection = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("file", o.file, "election file ('-' for stdin)");
    sub->add_option("--rule", o.rule, "voting rule")->capture_default_str();
  };
  auto suspects = [&](CLI::App* sub) {
    sub->add_option("--suspects", o.suspects, "comma-separated voter indices (0-based)");
  };
  auto target = [&](CLI::App* sub) {
    sub->add_option("--actual-winner", o.actual_winner, "candidate the suspects must elect");
  };
  auto bound = [&](CLI::App* sub) { sub->add_option("-k", o.bound, "maximum coalition size"); };

  auto* w = app.add_subcommand("winner", "winner under a rule");
  detection(w);
  auto* cpmw = app.add_subcommand("cpmw", "can the suspects elect a given candidate?");
  detection(cpmw), suspects(cpmw), target(cpmw);
  auto* cpm = app.add_subcommand("cpm", "can the suspects elect anyone else?");
  detection(cpm), suspects(cpm);
  auto* cpmsw = app.add_subcommand("cpmsw", "is there a coalition of size <= k electing y?");
  detection(cpmsw), target(cpmsw), bound(cpmsw);
  auto* cpms = app.add_subcommand("cpms", "is there a coalition of size <= k?");
  detection(cpms), bound(cpms);
  auto* oracle = app.add_subcommand("oracle", "exhaustive search (any rule)");
  detection(oracle), suspects(oracle), target(oracle), bound(oracle);
  auto* gen = app.add_subcommand("gen", "generate an election file");
  common(gen);
  gen->add_option("kind", o.kind, "random | mcgarvey | x3c")->required();
  gen->add_option("-m", o.m, "candidates (random)");
  gen->add_option("-n", o.n, "voters (random)");
  gen->add_option("--seed", o.seed, "RNG seed (random)");
  gen->add_option("--margins", o.margins, "margin matrix, rows ';'-separated (mcgarvey)");
  gen->add_option("--universe", o.universe, "universe size (x3c)");
  gen->add_option("--triples", o.triples, "triples '1,2,3;4,5,6' (x3c)");

  CommandResult res;
  Report& r = res.report;
  const auto start = std::chrono::steady_clock::now();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      res.output = app.help();
      return res;
    } catch (const CLI::ParseError& err) {
      throw ConfigurationError(err.what());
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    r.problem = cmd;
    r.budget.forced = o.force;
    if (cmd == "gen") {
      detail::run_gen(o, r);
      res.exit_code = 0;
    } else {
      res.exit_code = detail::run_detection(cmd, o, in, r);
    }
  } catch (const BudgetExceededError& err) {
    r.budget.exceeded = true;
    r.budget.required = err.required();
    r.error = err.what();
    res.exit_code = 2;
  } catch (const std::exception& err) {
    r.error = err.what();
    res.exit_code = 2;
  }
  r.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  res.output = o.json ? nlohmann::json(r).dump(2) + "\n" : render_text(r);
  return res;
}

}  // namespace pmd
