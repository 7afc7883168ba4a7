#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "cellang/algorithms.hpp"
#include "cellang/automaton.hpp"
#include "cellang/errors.hpp"

namespace cellang {

/// Regular expression syntax tree.
struct Regex {
  enum class Kind { Letter, EmptyWord, Union, Concat, Star };

  Kind kind = Kind::EmptyWord;
  char letter = 0;              // Kind::Letter only
  std::vector<Regex> children;  // 2 for Union/Concat, 1 for Star

  static Regex make_letter(char c) { return {Kind::Letter, c, {}}; }
  static Regex empty_word() { return {Kind::EmptyWord, 0, {}}; }
  static Regex make_union(Regex l, Regex r) { return {Kind::Union, 0, {std::move(l), std::move(r)}}; }
  static Regex concat(Regex l, Regex r) { return {Kind::Concat, 0, {std::move(l), std::move(r)}}; }
  static Regex star(Regex e) { return {Kind::Star, 0, {std::move(e)}}; }

  std::size_t node_count() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.node_count();
    return n;
  }

  bool operator==(const Regex&) const = default;
};

/// Fully parenthesized rendering, mostly for diagnostics and tests.
inline std::string to_string(const Regex& r) {
  switch (r.kind) {
    case Regex::Kind::Letter: return std::string(1, r.letter);
    case Regex::Kind::EmptyWord: return "_";
    case Regex::Kind::Union: return "(" + to_string(r.children[0]) + "|" + to_string(r.children[1]) + ")";
    case Regex::Kind::Concat: return "(" + to_string(r.children[0]) + to_string(r.children[1]) + ")";
    case Regex::Kind::Star: return to_string(r.children[0]) + "*";
  }
  return {};
}

namespace detail {

// expr := term ('|' term)* ; term := factor+ ; factor := base '*'* ;
// base := letter | '(' expr ')' | '_'
class RegexParser {
 public:
  RegexParser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  Regex parse() {
    skip_space();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "empty expression");
    Regex e = expr();
    if (pos_ != text_.size()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }
  char peek() { return at_end() ? '\0' : text_[pos_]; }

  Regex expr() {
    Regex left = term();
    while (peek() == '|') {
      ++pos_;
      left = Regex::make_union(std::move(left), term());
    }
    return left;
  }

  Regex term() {
    Regex left = factor();
    while (!at_end() && peek() != '|' && peek() != ')') left = Regex::concat(std::move(left), factor());
    return left;
  }

  Regex factor() {
    Regex e = base();
    while (peek() == '*') {
      ++pos_;
      e = Regex::star(std::move(e));
    }
    return e;
  }

  Regex base() {
    if (at_end()) throw SyntaxError(pos_, "unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Regex e = expr();
      if (peek() != ')') throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return e;
    }
    if (c == '_') {
      ++pos_;
      return Regex::empty_word();
    }
    if (c == ')' || c == '|' || c == '*') throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
    if (!alphabet_.contains(c)) throw UnknownLetter(c);
    ++pos_;
    return Regex::make_letter(c);
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Regex parse_regex(std::string_view text, const Alphabet& alphabet) {
  return detail::RegexParser(text, alphabet).parse();
}

namespace detail {

struct EpsilonNfa {
  std::size_t states = 0;
  std::vector<std::vector<State>> eps;
  std::vector<Transition> moves;

  State add_state() {
    eps.emplace_back();
    return static_cast<State>(states++);
  }
};

struct Fragment {
  State start;
  State accept;
};

// Thompson construction; an empty-word node uses one state, a letter two.
inline Fragment thompson(const Regex& r, const Alphabet& alphabet, EpsilonNfa& g) {
  switch (r.kind) {
    case Regex::Kind::EmptyWord: {
      State s = g.add_state();
      return {s, s};
    }
    case Regex::Kind::Letter: {
      State s = g.add_state();
      State t = g.add_state();
      g.moves.push_back({s, alphabet.index(r.letter), t});
      return {s, t};
    }
    case Regex::Kind::Concat: {
      Fragment a = thompson(r.children[0], alphabet, g);
      Fragment b = thompson(r.children[1], alphabet, g);
      g.eps[a.accept].push_back(b.start);
      return {a.start, b.accept};
    }
    case Regex::Kind::Union: {
      State s = g.add_state();
      Fragment a = thompson(r.children[0], alphabet, g);
      Fragment b = thompson(r.children[1], alphabet, g);
      State t = g.add_state();
      g.eps[s] = {a.start, b.start};
      g.eps[a.accept].push_back(t);
      g.eps[b.accept].push_back(t);
      return {s, t};
    }
    case Regex::Kind::Star: {
      State s = g.add_state();
      Fragment a = thompson(r.children[0], alphabet, g);
      State t = g.add_state();
      g.eps[s] = {a.start, t};
      g.eps[a.accept].push_back(a.start);
      g.eps[a.accept].push_back(t);
      return {s, t};
    }
  }
  throw Error("corrupt regex node");
}

}  // namespace detail

/// Epsilon-free Nfa for the expression: Thompson construction followed by
/// epsilon elimination and removal of unreachable states. The state count
/// never exceeds twice the node count.
inline Nfa ast_to_nfa(const Regex& ast, const Alphabet& alphabet) {
  detail::EpsilonNfa g;
  detail::Fragment f = detail::thompson(ast, alphabet, g);

  std::vector<std::vector<State>> closure(g.states);
  for (State s = 0; s < g.states; ++s) {
    std::vector<bool> seen(g.states, false);
    std::vector<State> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      State u = stack.back();
      stack.pop_back();
      closure[s].push_back(u);
      for (State v : g.eps[u])
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
    }
  }
  std::vector<std::vector<Transition>> out_moves(g.states);
  for (const auto& t : g.moves) out_moves[t.from].push_back(t);

  // p --c--> r whenever p reaches some p' by epsilons and p' --c--> r.
  std::vector<std::vector<std::pair<Letter, State>>> edges(g.states);
  std::vector<bool> accepting(g.states, false);
  for (State s = 0; s < g.states; ++s)
    for (State u : closure[s]) {
      if (u == f.accept) accepting[s] = true;
      for (const auto& t : out_moves[u]) edges[s].emplace_back(t.letter, t.to);
    }

  std::vector<State> rename(g.states, kNoState);
  std::vector<State> order{f.start};
  rename[f.start] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto [l, t] : edges[order[i]])
      if (rename[t] == kNoState) {
        rename[t] = static_cast<State>(order.size());
        order.push_back(t);
      }

  Nfa n(alphabet, order.size());
  n.add_initial(0);
  for (State i = 0; i < order.size(); ++i) {
    n.set_accepting(i, accepting[order[i]]);
    for (auto [l, t] : edges[order[i]]) n.add_transition(i, l, rename[t]);
  }
  return n;
}

inline Nfa regex_to_nfa(std::string_view text, const Alphabet& alphabet) {
  return ast_to_nfa(parse_regex(text, alphabet), alphabet);
}

}  // namespace cellang
