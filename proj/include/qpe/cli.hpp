#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpe/game_io.hpp"
#include "qpe/multiplayer.hpp"
#include "qpe/result.hpp"
#include "qpe/two_player.hpp"

// Command-line driver. Exit codes: 0 on success with all verifications
// passing, 2 when a verification fails, 1 on usage or processing errors.

namespace qpe {

struct RunConfig {
  std::string mode;
  std::string game_path;
  std::string profile_path;
  std::string out_path;
  std::string eps, delta, gamma;          // rationals, parsed on use
  std::string squarings = "0,0";
  std::vector<std::string> check_eps{"1/100", "1/10000"};
  // Ratio bound: "eps" or "2eps"; empty picks 2eps for solver output and
  // the plain eps bound for user-supplied profiles.
  std::string form;
  std::string kind = "quasi";             // verify mode: quasi | almost | nash
  std::string numeric = "float";          // solve-n arithmetic
  int facet_threshold = default_facet_threshold();
  int max_iters = 400;
  double damping = 0.5;
  double tolerance = 1e-9;
  int restarts = 8;
  unsigned long seed = 1;
  int max_pivots = 100000;
};

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::pair<int, int> parse_squarings(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::runtime_error("--squarings expects N,N");
  return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

inline int ratio_factor_of(const std::string& form) {
  if (form == "eps") return 1;
  if (form == "2eps") return 2;
  throw std::runtime_error("--form must be eps or 2eps");
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    ParsedGame pg = parse_game(detail::slurp(cfg.game_path));
    const GameTree& g = pg.game;

    ResultDocument doc;
    doc.game = &g;
    doc.mode = cfg.mode;
    TwoPlayerOptions topt;
    topt.facet_threshold = cfg.facet_threshold;
    topt.max_pivots = cfg.max_pivots;
    int factor = cfg.form.empty()
                     ? (cfg.mode == "verify" ? 1 : 2)
                     : detail::ratio_factor_of(cfg.form);

    if (cfg.mode == "solve2p" || cfg.mode == "solve-zs") {
      SymbolicEquilibrium eq;
      if (cfg.mode == "solve2p") {
        TwoPlayerSolution sol = solve_two_player(g, topt);
        eq = sol.equilibrium;
      } else {
        ZeroSumSolution sol = solve_zero_sum(g, topt);
        eq = sol.equilibrium;
        doc.value = sol.value;
      }
      doc.equilibrium = eq;
      for (const std::string& etext : cfg.check_eps) {
        Rat eps0 = rat_from_string(etext);
        doc.reports.push_back(verify_eps_quasi_proper(
            g, eval_profile(eq.symbolic, eps0), eps0, factor));
      }
      doc.reports.push_back(verify_nash(g, eq.limit));
    } else if (cfg.mode == "solve-n") {
      Rat eps, delta;
      if (!cfg.gamma.empty()) {
        auto [q1, q2] = detail::parse_squarings(cfg.squarings);
        auto sched = schedule_eps_delta(rat_from_string(cfg.gamma), q1, q2);
        eps = sched.first;
        delta = sched.second;
      } else {
        eps = cfg.eps.empty() ? make_rat(1, 20) : rat_from_string(cfg.eps);
        delta = cfg.delta.empty() ? make_rat(1, 10000) : rat_from_string(cfg.delta);
      }
      IterationConfig icfg;
      icfg.damping = cfg.damping;
      icfg.max_iters = cfg.max_iters;
      icfg.tolerance = cfg.tolerance;
      icfg.restarts = cfg.restarts;
      icfg.seed = cfg.seed;
      icfg.mode = cfg.numeric == "rational" ? NumericMode::kRational
                                            : NumericMode::kFloat;
      MultiplayerRun run = solve_multiplayer(g, eps, delta, icfg);
      doc.profile = run.profile;
      doc.residual = run.residual;
      doc.search_residual = run.search_residual;
      doc.reports.push_back(run.report);
    } else if (cfg.mode == "verify") {
      if (cfg.profile_path.empty())
        throw std::runtime_error("verify mode needs --profile FILE");
      BehaviorProfile<Rat> b =
          parse_profile(detail::slurp(cfg.profile_path), g);
      doc.profile = b;
      if (cfg.kind == "quasi") {
        for (const std::string& etext : cfg.check_eps) {
          Rat eps0 = rat_from_string(etext);
          doc.reports.push_back(verify_eps_quasi_proper(g, b, eps0, factor));
        }
      } else if (cfg.kind == "almost") {
        Rat eps = cfg.eps.empty() ? make_rat(1, 20) : rat_from_string(cfg.eps);
        Rat delta =
            cfg.delta.empty() ? make_rat(1, 10000) : rat_from_string(cfg.delta);
        doc.reports.push_back(verify_delta_almost(g, b, eps, delta));
      } else if (cfg.kind == "nash") {
        doc.reports.push_back(verify_nash(g, b));
      } else {
        throw std::runtime_error("--kind must be quasi, almost or nash");
      }
    } else {
      throw std::runtime_error("--mode must be one of solve2p, solve-zs, "
                               "solve-n, verify");
    }

    std::string text = emit_result(doc);
    if (!cfg.out_path.empty()) {
      std::ofstream f(cfg.out_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
      f << text;
    } else {
      out << text;
    }
    return doc.verified() ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  RunConfig cfg;
  CLI::App app{
      "Symbolic quasi-proper equilibrium solver for extensive-form games"};
  app.add_option("--game", cfg.game_path, "game file (.qpef)")->required();
  app.add_option("--mode", cfg.mode, "solve2p | solve-zs | solve-n | verify")
      ->required();
  app.add_option("--eps", cfg.eps, "numeric eps (solve-n, verify --kind almost)");
  app.add_option("--delta", cfg.delta, "numeric delta");
  app.add_option("--gamma", cfg.gamma, "target gamma for the schedule");
  app.add_option("--squarings", cfg.squarings, "q1,q2 squaring counts");
  app.add_option("--check-eps", cfg.check_eps,
                 "verification sample points (rationals)")
      ->delimiter(',');
  app.add_option("--form", cfg.form, "ratio bound: eps | 2eps");
  app.add_option("--kind", cfg.kind, "verify mode check: quasi | almost | nash");
  app.add_option("--numeric", cfg.numeric, "solve-n arithmetic: float | rational");
  app.add_option("--facet-threshold", cfg.facet_threshold,
                 "largest infoset realized by facets");
  app.add_option("--max-iters", cfg.max_iters, "iteration budget per restart");
  app.add_option("--damping", cfg.damping, "damping factor in (0,1]");
  app.add_option("--tolerance", cfg.tolerance, "residual target");
  app.add_option("--restarts", cfg.restarts, "perturbed restarts");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--max-pivots", cfg.max_pivots, "pivot budget");
  app.add_option("--out", cfg.out_path, "write the result document here");
  app.add_option("--profile", cfg.profile_path, "profile file (verify mode)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.get_name() << ": " << e.what() << "\n";
    return 1;
  }
  return run(cfg, out, err);
}

}  // namespace qpe
