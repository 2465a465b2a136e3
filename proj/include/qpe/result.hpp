#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qpe/equilibrium.hpp"
#include "qpe/game.hpp"
#include "qpe/multiplayer.hpp"

// The machine-readable result document: flat space-separated key/value
// lines, exact rationals, eps-polynomials as ascending coefficient lists.
// The exact grammar lives in docs/format.md and is pinned by golden files.

namespace qpe {

struct ResultDocument {
  std::string mode;  // solve2p | solve-zs | solve-n | verify
  const GameTree* game = nullptr;
  std::optional<SymbolicEquilibrium> equilibrium;
  std::optional<EpsRat> value;  // zero-sum only
  std::optional<BehaviorProfile<Rat>> profile;
  std::optional<Rat> residual;
  std::optional<double> search_residual;
  std::vector<VerificationReport> reports;

  bool verified() const {
    if (reports.empty()) return false;
    for (const auto& r : reports)
      if (!r.pass) return false;
    return true;
  }
};

namespace detail {

inline void emit_coeffs(std::ostringstream& out, const EpsPoly& p) {
  if (p.is_zero()) {
    out << " 0";
    return;
  }
  for (const Rat& c : p.coeffs()) out << " " << to_string(c);
}

inline void emit_eps_rat(std::ostringstream& out, const EpsRat& v) {
  out << "num";
  emit_coeffs(out, v.num());
  out << " den";
  emit_coeffs(out, v.den());
}

inline void emit_report(std::ostringstream& out, const GameTree& g,
                        const VerificationReport& rep) {
  switch (rep.kind) {
    case VerifyKind::kQuasiProper:
      out << "verify quasi-proper eps0 " << to_string(rep.eps0) << " factor "
          << rep.ratio_factor << " " << (rep.pass ? "pass" : "fail") << "\n";
      break;
    case VerifyKind::kDeltaAlmost:
      out << "verify delta-almost eps " << to_string(rep.eps0) << " delta "
          << to_string(rep.delta) << " " << (rep.pass ? "pass" : "fail")
          << "\n";
      break;
    case VerifyKind::kNash:
      out << "verify nash " << (rep.pass ? "pass" : "fail") << "\n";
      break;
  }
  for (const Violation& v : rep.violations) {
    out << "violation " << (v.player + 1) << " ";
    if (v.infoset >= 0) {
      const InfoSet& s = g.infoset(v.infoset);
      out << s.name << " " << s.actions[static_cast<size_t>(v.action_c)] << " "
          << s.actions[static_cast<size_t>(v.action_cprime)];
    } else {
      out << "- - -";
    }
    out << " " << to_string(v.value_c) << " " << to_string(v.value_cprime)
        << "\n";
  }
}

}  // namespace detail

inline std::string emit_result(const ResultDocument& doc) {
  const GameTree& g = *doc.game;
  std::ostringstream out;
  out << "format qpef-result 1\n";
  out << "mode " << doc.mode << "\n";
  out << "players " << g.num_players << "\n";

  if (doc.equilibrium) {
    const SymbolicEquilibrium& eq = *doc.equilibrium;
    for (PlayerId p = 0; p < g.num_players; ++p)
      for (InfosetId h : g.infosets_of[static_cast<size_t>(p)]) {
        const InfoSet& s = g.infoset(h);
        for (size_t a = 0; a < s.actions.size(); ++a) {
          out << "strategy " << (p + 1) << " " << s.name << " " << s.actions[a]
              << " ";
          detail::emit_eps_rat(out, eq.symbolic.at(h, static_cast<int>(a)));
          out << "\n";
        }
        for (size_t a = 0; a < s.actions.size(); ++a)
          out << "limit " << (p + 1) << " " << s.name << " " << s.actions[a]
              << " " << to_string(eq.limit.at(h, static_cast<int>(a))) << "\n";
      }
  }
  if (doc.value) {
    out << "value ";
    detail::emit_eps_rat(out, *doc.value);
    out << "\n";
    out << "value-limit " << to_string(doc.value->limit_at_zero()) << "\n";
  }
  if (doc.profile) {
    for (PlayerId p = 0; p < g.num_players; ++p)
      for (InfosetId h : g.infosets_of[static_cast<size_t>(p)]) {
        const InfoSet& s = g.infoset(h);
        for (size_t a = 0; a < s.actions.size(); ++a)
          out << "profile " << (p + 1) << " " << s.name << " " << s.actions[a]
              << " " << to_string(doc.profile->at(h, static_cast<int>(a)))
              << "\n";
      }
  }
  if (doc.residual) out << "residual " << to_string(*doc.residual) << "\n";
  if (doc.search_residual) {
    std::ostringstream fr;
    fr.precision(17);
    fr << *doc.search_residual;
    out << "search-residual " << fr.str() << "\n";
  }
  for (const auto& rep : doc.reports) detail::emit_report(out, g, rep);
  out << "verified " << (doc.verified() ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace qpe
