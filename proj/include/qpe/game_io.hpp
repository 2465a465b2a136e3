#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpe/game.hpp"
#include "qpe/rational.hpp"

// Textual contract for games and profiles: a small S-expression grammar with
// exact rationals only (decimal literals are rejected). See docs/format.md.

namespace qpe {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int col, const std::string& expected,
              const std::string& got)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": expected " + expected +
                           ", got " + got),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct GameDocument {
  int version = 1;
  int num_players = 0;
  std::vector<std::string> player_names;  // optional, size 0 or num_players
};

namespace detail {

struct Token {
  enum Kind { kLParen, kRParen, kAtom, kEnd } kind = kEnd;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  Token expect(Token::Kind kind, const std::string& what) {
    if (tok_.kind != kind)
      throw SyntaxError(tok_.line, tok_.col, what, describe(tok_));
    return next();
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::kLParen:
        return "'('";
      case Token::kRParen:
        return "')'";
      case Token::kAtom:
        return "'" + t.text + "'";
      case Token::kEnd:
        return "end of input";
    }
    return "?";
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else {
        break;
      }
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::kEnd;
      tok_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (c == '(' || c == ')') {
      tok_.kind = c == '(' ? Token::kLParen : Token::kRParen;
      tok_.text = std::string(1, c);
      ++pos_;
      ++col_;
      return;
    }
    size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' ||
          std::isspace(static_cast<unsigned char>(d)))
        break;
      ++pos_;
      ++col_;
    }
    tok_.kind = Token::kAtom;
    tok_.text = text_.substr(start, pos_ - start);
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

inline Rat parse_rational(const Token& t) {
  if (t.kind != Token::kAtom)
    throw SyntaxError(t.line, t.col, "a rational", Lexer::describe(t));
  if (t.text.find('.') != std::string::npos)
    throw SyntaxError(t.line, t.col, "a rational (decimals are not accepted)",
                      "'" + t.text + "'");
  try {
    return rat_from_string(t.text);
  } catch (const BadRational&) {
    throw SyntaxError(t.line, t.col, "a rational", "'" + t.text + "'");
  }
}

inline int parse_int(const Token& t, const std::string& what) {
  if (t.kind != Token::kAtom)
    throw SyntaxError(t.line, t.col, what, Lexer::describe(t));
  try {
    size_t used = 0;
    int v = std::stoi(t.text, &used);
    if (used != t.text.size()) throw std::invalid_argument(t.text);
    return v;
  } catch (const std::exception&) {
    throw SyntaxError(t.line, t.col, what, "'" + t.text + "'");
  }
}

inline std::string expect_keyword(Lexer& lex, const std::string& kw) {
  Token t = lex.expect(Token::kAtom, "'" + kw + "'");
  if (t.text != kw)
    throw SyntaxError(t.line, t.col, "'" + kw + "'", "'" + t.text + "'");
  return t.text;
}

class GameParser {
 public:
  explicit GameParser(const std::string& text) : lex_(text) {}

  std::pair<GameDocument, GameTree> parse() {
    lex_.expect(Token::kLParen, "'('");
    expect_keyword(lex_, "game");
    while (lex_.peek().kind == Token::kAtom &&
           !lex_.peek().text.empty() && lex_.peek().text[0] == ':') {
      Token key = lex_.next();
      if (key.text == ":version") {
        doc_.version = parse_int(lex_.next(), "a version number");
      } else if (key.text == ":players") {
        doc_.num_players = parse_int(lex_.next(), "a player count");
        if (doc_.num_players < 1)
          throw SyntaxError(key.line, key.col, "a player count >= 1",
                            std::to_string(doc_.num_players));
      } else if (key.text == ":names") {
        lex_.expect(Token::kLParen, "'('");
        while (lex_.peek().kind == Token::kAtom)
          doc_.player_names.push_back(lex_.next().text);
        lex_.expect(Token::kRParen, "')'");
      } else {
        throw SyntaxError(key.line, key.col,
                          "':version', ':players' or ':names'",
                          "'" + key.text + "'");
      }
    }
    if (doc_.num_players < 1) {
      const Token& t = lex_.peek();
      throw SyntaxError(t.line, t.col, "':players' in the game header",
                        Lexer::describe(t));
    }
    if (!doc_.player_names.empty() &&
        static_cast<int>(doc_.player_names.size()) != doc_.num_players) {
      const Token& t = lex_.peek();
      throw SyntaxError(t.line, t.col, "one name per player", "a mismatch");
    }
    game_.num_players = doc_.num_players;
    game_.root = parse_node(-1);
    lex_.expect(Token::kRParen, "')'");
    if (lex_.peek().kind != Token::kEnd) {
      const Token& t = lex_.peek();
      throw SyntaxError(t.line, t.col, "end of input", Lexer::describe(t));
    }
    return {doc_, std::move(game_)};
  }

 private:
  NodeId parse_node(NodeId parent) {
    Token open = lex_.expect(Token::kLParen, "'('");
    Token head = lex_.expect(Token::kAtom, "'chance', 'decision' or 'leaf'");
    NodeId id = static_cast<NodeId>(game_.nodes.size());
    game_.nodes.emplace_back();
    game_.nodes[static_cast<size_t>(id)].parent = parent;
    game_.nodes[static_cast<size_t>(id)].src_line = open.line;
    game_.nodes[static_cast<size_t>(id)].src_col = open.col;
    if (head.text == "leaf") {
      parse_leaf(id);
    } else if (head.text == "chance") {
      parse_chance(id);
    } else if (head.text == "decision") {
      parse_decision(id, head);
    } else {
      throw SyntaxError(head.line, head.col, "'chance', 'decision' or 'leaf'",
                        "'" + head.text + "'");
    }
    lex_.expect(Token::kRParen, "')'");
    return id;
  }

  void parse_leaf(NodeId id) {
    lex_.expect(Token::kLParen, "'(' opening the payoff vector");
    std::vector<Rat> payoffs;
    while (lex_.peek().kind == Token::kAtom)
      payoffs.push_back(parse_rational(lex_.next()));
    Token close = lex_.expect(Token::kRParen, "')'");
    if (static_cast<int>(payoffs.size()) != game_.num_players)
      throw SyntaxError(close.line, close.col,
                        std::to_string(game_.num_players) + " payoffs",
                        std::to_string(payoffs.size()));
    Node& n = game_.nodes[static_cast<size_t>(id)];
    n.kind = NodeKind::kLeaf;
    n.payoffs = std::move(payoffs);
  }

  void parse_chance(NodeId id) {
    game_.nodes[static_cast<size_t>(id)].kind = NodeKind::kChance;
    if (lex_.peek().kind == Token::kAtom && lex_.peek().text == ":id") {
      lex_.next();
      Token name = lex_.expect(Token::kAtom, "a node id");
      game_.nodes[static_cast<size_t>(id)].name = name.text;
    }
    int branches = 0;
    while (lex_.peek().kind == Token::kLParen) {
      lex_.next();
      Token label = lex_.expect(Token::kAtom, "an outcome label");
      Rat prob = parse_rational(lex_.next());
      NodeId child = parse_node(id);
      lex_.expect(Token::kRParen, "')'");
      Node& n = game_.nodes[static_cast<size_t>(id)];
      n.actions.push_back(label.text);
      n.chance_probs.push_back(prob);
      n.children.push_back(child);
      ++branches;
    }
    if (branches == 0) {
      const Token& t = lex_.peek();
      throw SyntaxError(t.line, t.col, "at least one chance branch",
                        Lexer::describe(t));
    }
  }

  void parse_decision(NodeId id, const Token& head) {
    game_.nodes[static_cast<size_t>(id)].kind = NodeKind::kDecision;
    int player = -1;
    std::string infoset_name;
    std::vector<std::string> actions;
    while (lex_.peek().kind == Token::kAtom && lex_.peek().text[0] == ':') {
      Token key = lex_.next();
      if (key.text == ":player") {
        player = parse_int(lex_.next(), "a player number");
        if (player < 1 || player > game_.num_players)
          throw SyntaxError(key.line, key.col,
                            "a player in 1.." + std::to_string(game_.num_players),
                            std::to_string(player));
      } else if (key.text == ":infoset") {
        infoset_name = lex_.expect(Token::kAtom, "an infoset name").text;
      } else if (key.text == ":actions") {
        lex_.expect(Token::kLParen, "'('");
        while (lex_.peek().kind == Token::kAtom)
          actions.push_back(lex_.next().text);
        lex_.expect(Token::kRParen, "')'");
      } else {
        throw SyntaxError(key.line, key.col,
                          "':player', ':infoset' or ':actions'",
                          "'" + key.text + "'");
      }
    }
    if (player < 0 || infoset_name.empty() || actions.empty())
      throw SyntaxError(head.line, head.col,
                        "':player', ':infoset' and ':actions' on a decision",
                        "an incomplete node");

    InfosetId hid = intern_infoset(player - 1, infoset_name, actions, head);
    game_.nodes[static_cast<size_t>(id)].infoset = hid;

    size_t next_action = 0;
    while (lex_.peek().kind == Token::kLParen) {
      lex_.next();
      Token label = lex_.expect(Token::kAtom, "an action label");
      if (next_action >= actions.size() || label.text != actions[next_action])
        throw SyntaxError(label.line, label.col,
                          next_action < actions.size()
                              ? "action '" + actions[next_action] + "'"
                              : "no further children",
                          "'" + label.text + "'");
      NodeId child = parse_node(id);
      lex_.expect(Token::kRParen, "')'");
      Node& n = game_.nodes[static_cast<size_t>(id)];
      n.actions.push_back(label.text);
      n.children.push_back(child);
      ++next_action;
    }
    if (next_action != actions.size()) {
      const Token& t = lex_.peek();
      throw SyntaxError(t.line, t.col,
                        "a child per action (" + std::to_string(actions.size()) +
                            " expected)",
                        std::to_string(next_action) + " children");
    }
  }

  InfosetId intern_infoset(PlayerId owner, const std::string& name,
                           const std::vector<std::string>& actions,
                           const Token& at) {
    auto key = std::make_pair(owner, name);
    auto it = infoset_ids_.find(key);
    if (it == infoset_ids_.end()) {
      InfosetId hid = static_cast<InfosetId>(game_.infosets.size());
      game_.infosets.push_back(InfoSet{owner, name, actions, {}, at.line, at.col});
      infoset_ids_.emplace(key, hid);
      return hid;
    }
    if (game_.infosets[static_cast<size_t>(it->second)].actions != actions)
      throw SyntaxError(at.line, at.col,
                        "matching action lists for infoset '" + name + "'",
                        "a conflicting list");
    return it->second;
  }

  Lexer lex_;
  GameDocument doc_;
  GameTree game_;
  std::map<std::pair<PlayerId, std::string>, InfosetId> infoset_ids_;
};

}  // namespace detail

struct ParsedGame {
  GameDocument doc;
  GameTree game;  // validated
};

/// Parse and validate a game. Throws SyntaxError for grammar problems and
/// the validate() errors for semantic ones.
inline ParsedGame parse_game(const std::string& text) {
  detail::GameParser parser(text);
  auto [doc, game] = parser.parse();
  return ParsedGame{doc, validate(std::move(game))};
}

namespace detail {

inline void serialize_node(const GameTree& g, NodeId v, int indent,
                           std::ostringstream& out) {
  const Node& n = g.node(v);
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  switch (n.kind) {
    case NodeKind::kLeaf: {
      out << pad << "(leaf (";
      for (size_t i = 0; i < n.payoffs.size(); ++i)
        out << (i ? " " : "") << to_string(n.payoffs[i]);
      out << "))";
      return;
    }
    case NodeKind::kChance: {
      out << pad << "(chance";
      if (!n.name.empty()) out << " :id " << n.name;
      for (size_t i = 0; i < n.children.size(); ++i) {
        out << "\n" << pad << "  (" << n.actions[i] << " "
            << to_string(n.chance_probs[i]) << "\n";
        serialize_node(g, n.children[i], indent + 2, out);
        out << ")";
      }
      out << ")";
      return;
    }
    case NodeKind::kDecision: {
      const InfoSet& s = g.infoset(n.infoset);
      out << pad << "(decision :player " << (s.owner + 1) << " :infoset "
          << s.name << " :actions (";
      for (size_t i = 0; i < s.actions.size(); ++i)
        out << (i ? " " : "") << s.actions[i];
      out << ")";
      for (size_t i = 0; i < n.children.size(); ++i) {
        out << "\n" << pad << "  (" << n.actions[i] << "\n";
        serialize_node(g, n.children[i], indent + 2, out);
        out << ")";
      }
      out << ")";
      return;
    }
  }
}

}  // namespace detail

/// Canonical text form; parse(serialize(g)) reproduces g and
/// serialize(parse(t)) is idempotent on accepted inputs.
inline std::string serialize(const GameTree& g, const GameDocument& doc) {
  std::ostringstream out;
  out << "(game :version " << doc.version << " :players " << g.num_players;
  if (!doc.player_names.empty()) {
    out << " :names (";
    for (size_t i = 0; i < doc.player_names.size(); ++i)
      out << (i ? " " : "") << doc.player_names[i];
    out << ")";
  }
  out << "\n";
  detail::serialize_node(g, g.root, 1, out);
  out << ")\n";
  return out.str();
}

inline std::string serialize(const GameTree& g) {
  GameDocument doc;
  doc.num_players = g.num_players;
  return serialize(g, doc);
}

/// Behavior profile text form:
///   (profile (strategy :player 1 :infoset H (a 1/2) (b 1/2)) ...)
/// Every infoset of the game must be covered and each block must sum to 1.
inline BehaviorProfile<Rat> parse_profile(const std::string& text,
                                          const GameTree& g) {
  detail::Lexer lex(text);
  lex.expect(detail::Token::kLParen, "'('");
  detail::expect_keyword(lex, "profile");
  BehaviorProfile<Rat> b;
  b.local.resize(g.infosets.size());
  std::vector<bool> covered(g.infosets.size(), false);
  while (lex.peek().kind == detail::Token::kLParen) {
    lex.next();
    detail::Token head = lex.expect(detail::Token::kAtom, "'strategy'");
    if (head.text != "strategy")
      throw SyntaxError(head.line, head.col, "'strategy'", "'" + head.text + "'");
    int player = -1;
    std::string name;
    while (lex.peek().kind == detail::Token::kAtom &&
           lex.peek().text[0] == ':') {
      detail::Token key = lex.next();
      if (key.text == ":player")
        player = detail::parse_int(lex.next(), "a player number");
      else if (key.text == ":infoset")
        name = lex.expect(detail::Token::kAtom, "an infoset name").text;
      else
        throw SyntaxError(key.line, key.col, "':player' or ':infoset'",
                          "'" + key.text + "'");
    }
    InfosetId hid = -1;
    for (size_t h = 0; h < g.infosets.size(); ++h)
      if (g.infosets[h].owner == player - 1 && g.infosets[h].name == name)
        hid = static_cast<InfosetId>(h);
    if (hid < 0)
      throw SyntaxError(head.line, head.col,
                        "a known (player, infoset) pair",
                        "player " + std::to_string(player) + ", '" + name + "'");
    const InfoSet& s = g.infoset(hid);
    std::vector<Rat> probs(s.actions.size(), Rat(0));
    std::vector<bool> set(s.actions.size(), false);
    while (lex.peek().kind == detail::Token::kLParen) {
      lex.next();
      detail::Token label = lex.expect(detail::Token::kAtom, "an action label");
      int a = g.action_index(hid, label.text);
      if (a < 0)
        throw SyntaxError(label.line, label.col,
                          "an action of infoset '" + name + "'",
                          "'" + label.text + "'");
      if (set[static_cast<size_t>(a)])
        throw SyntaxError(label.line, label.col, "each action once",
                          "a duplicate '" + label.text + "'");
      probs[static_cast<size_t>(a)] = detail::parse_rational(lex.next());
      set[static_cast<size_t>(a)] = true;
      lex.expect(detail::Token::kRParen, "')'");
    }
    detail::Token close = lex.expect(detail::Token::kRParen, "')'");
    Rat total(0);
    for (const Rat& p : probs) {
      if (p < 0)
        throw SyntaxError(close.line, close.col, "nonnegative probabilities",
                          "a negative entry");
      total += p;
    }
    if (total != 1)
      throw SyntaxError(close.line, close.col,
                        "probabilities summing to 1 at '" + name + "'",
                        to_string(total));
    b.local[static_cast<size_t>(hid)] = std::move(probs);
    covered[static_cast<size_t>(hid)] = true;
  }
  lex.expect(detail::Token::kRParen, "')'");
  for (size_t h = 0; h < g.infosets.size(); ++h)
    if (!covered[h])
      throw SyntaxError(1, 1, "a strategy for every infoset",
                        "none for '" + g.infosets[h].name + "'");
  return b;
}

inline std::string serialize_profile(const GameTree& g,
                                     const BehaviorProfile<Rat>& b) {
  std::ostringstream out;
  out << "(profile";
  for (int p = 0; p < g.num_players; ++p)
    for (InfosetId h : g.infosets_of[static_cast<size_t>(p)]) {
      const InfoSet& s = g.infoset(h);
      out << "\n  (strategy :player " << (p + 1) << " :infoset " << s.name;
      for (size_t a = 0; a < s.actions.size(); ++a)
        out << " (" << s.actions[a] << " "
            << to_string(b.at(h, static_cast<int>(a))) << ")";
      out << ")";
    }
  out << ")\n";
  return out.str();
}

}  // namespace qpe
