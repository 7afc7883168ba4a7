#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <tuple>
#include <vector>

#include "cellang/alphabet.hpp"
#include "cellang/errors.hpp"

namespace cellang {

using State = std::uint32_t;
inline constexpr State kNoState = std::numeric_limits<State>::max();

struct Transition {
  State from;
  Letter letter;
  State to;

  auto operator<=>(const Transition&) const = default;
};

/// Nondeterministic acceptor without epsilon moves. Any number of initial
/// states is allowed.
class Nfa {
 public:
  Nfa(Alphabet alphabet, std::size_t state_count)
      : alphabet_(std::move(alphabet)),
        state_count_(state_count),
        accepting_(state_count, false),
        succ_(state_count * alphabet_.size()) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return state_count_; }

  const std::vector<State>& initial() const noexcept { return initial_; }
  bool is_initial(State s) const { return std::binary_search(initial_.begin(), initial_.end(), s); }
  bool is_accepting(State s) const { return accepting_.at(s); }

  std::span<const State> successors(State s, Letter l) const { return succ_.at(slot(s, l)); }

  void add_initial(State s) {
    check_state(s);
    auto it = std::lower_bound(initial_.begin(), initial_.end(), s);
    if (it == initial_.end() || *it != s) initial_.insert(it, s);
  }

  void set_accepting(State s, bool accepting = true) {
    check_state(s);
    accepting_[s] = accepting;
  }

  void add_transition(State from, Letter l, State to) {
    check_state(from);
    check_state(to);
    if (l >= alphabet_.size()) throw Error("letter index out of range");
    auto& targets = succ_[slot(from, l)];
    auto it = std::lower_bound(targets.begin(), targets.end(), to);
    if (it == targets.end() || *it != to) targets.insert(it, to);
  }

  /// All transitions sorted by (from, letter, to).
  std::vector<Transition> transitions() const {
    std::vector<Transition> out;
    for (State s = 0; s < state_count_; ++s)
      for (Letter l = 0; l < alphabet_.size(); ++l)
        for (State t : successors(s, l)) out.push_back({s, l, t});
    return out;
  }

  /// At most one initial state and at most one successor per (state, letter).
  bool is_deterministic() const {
    if (initial_.size() > 1) return false;
    return std::all_of(succ_.begin(), succ_.end(), [](const auto& v) { return v.size() <= 1; });
  }

  /// Direct on-the-fly subset simulation.
  bool accepts(std::string_view word) const {
    std::vector<State> current = initial_;
    std::vector<char> mark(state_count_);
    for (char c : word) {
      Letter l = alphabet_.index(c);
      std::vector<State> next;
      std::fill(mark.begin(), mark.end(), 0);
      for (State s : current)
        for (State t : successors(s, l))
          if (!mark[t]) {
            mark[t] = 1;
            next.push_back(t);
          }
      current = std::move(next);
      if (current.empty()) return false;
    }
    return std::any_of(current.begin(), current.end(), [&](State s) { return accepting_[s]; });
  }

  bool operator==(const Nfa& other) const {
    return alphabet_ == other.alphabet_ && state_count_ == other.state_count_ &&
           initial_ == other.initial_ && accepting_ == other.accepting_ && succ_ == other.succ_;
  }

 private:
  std::size_t slot(State s, Letter l) const { return std::size_t{s} * alphabet_.size() + l; }
  void check_state(State s) const {
    if (s >= state_count_) throw Error("state id " + std::to_string(s) + " out of range");
  }

  Alphabet alphabet_;
  std::size_t state_count_;
  std::vector<State> initial_;
  std::vector<bool> accepting_;
  std::vector<std::vector<State>> succ_;
};

/// Deterministic acceptor. Transitions may be missing (kNoState) until the
/// automaton is completed; most algorithms require a complete Dfa.
class Dfa {
 public:
  Dfa(Alphabet alphabet, std::size_t state_count, State initial = 0)
      : alphabet_(std::move(alphabet)),
        initial_(initial),
        accepting_(state_count, false),
        delta_(state_count * alphabet_.size(), kNoState) {
    if (state_count == 0) throw Error("a Dfa needs at least one state");
    check_state(initial);
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return accepting_.size(); }
  State initial() const noexcept { return initial_; }
  bool is_accepting(State s) const { return accepting_.at(s); }

  State next(State s, Letter l) const { return delta_.at(std::size_t{s} * alphabet_.size() + l); }

  void set_initial(State s) {
    check_state(s);
    initial_ = s;
  }
  void set_accepting(State s, bool accepting = true) {
    check_state(s);
    accepting_[s] = accepting;
  }
  void set_transition(State from, Letter l, State to) {
    check_state(from);
    check_state(to);
    if (l >= alphabet_.size()) throw Error("letter index out of range");
    delta_[std::size_t{from} * alphabet_.size() + l] = to;
  }

  bool is_complete() const noexcept {
    return std::find(delta_.begin(), delta_.end(), kNoState) == delta_.end();
  }

  std::vector<State> accepting_states() const {
    std::vector<State> out;
    for (State s = 0; s < state_count(); ++s)
      if (accepting_[s]) out.push_back(s);
    return out;
  }

  /// A non-accepting state fixed by every letter, lowest id first.
  std::optional<State> sink() const {
    for (State s = 0; s < state_count(); ++s) {
      if (accepting_[s]) continue;
      bool absorbing = true;
      for (Letter l = 0; l < alphabet_.size() && absorbing; ++l) absorbing = next(s, l) == s;
      if (absorbing) return s;
    }
    return std::nullopt;
  }

  /// State reached from `from` on `word`; kNoState if a transition is missing.
  State run(State from, std::string_view word) const {
    check_state(from);
    State s = from;
    for (char c : word) {
      Letter l = alphabet_.index(c);
      if (s == kNoState) continue;  // keep validating letters
      s = next(s, l);
    }
    return s;
  }

  State run(std::string_view word) const { return run(initial_, word); }

  bool accepts(std::string_view word) const {
    State s = run(word);
    return s != kNoState && accepting_[s];
  }

  Nfa to_nfa() const {
    Nfa n(alphabet_, state_count());
    n.add_initial(initial_);
    for (State s = 0; s < state_count(); ++s) {
      n.set_accepting(s, accepting_[s]);
      for (Letter l = 0; l < alphabet_.size(); ++l)
        if (State t = next(s, l); t != kNoState) n.add_transition(s, l, t);
    }
    return n;
  }

  bool operator==(const Dfa& other) const {
    return alphabet_ == other.alphabet_ && initial_ == other.initial_ &&
           accepting_ == other.accepting_ && delta_ == other.delta_;
  }

 private:
  void check_state(State s) const {
    if (s >= accepting_.size()) throw Error("state id " + std::to_string(s) + " out of range");
  }

  Alphabet alphabet_;
  State initial_;
  std::vector<bool> accepting_;
  std::vector<State> delta_;
};

/// q.w on a Dfa; throws UnknownLetter for symbols outside the alphabet.
inline State run(const Dfa& d, State q, std::string_view w) { return d.run(q, w); }

/// Partial Dfa view of a deterministic Nfa, or nullopt if it is not
/// deterministic. An Nfa without initial state becomes a one-state empty Dfa.
inline std::optional<Dfa> as_dfa(const Nfa& n) {
  if (!n.is_deterministic()) return std::nullopt;
  if (n.initial().empty() || n.state_count() == 0) return Dfa(n.alphabet(), 1, 0);
  Dfa d(n.alphabet(), n.state_count(), n.initial().front());
  for (State s = 0; s < n.state_count(); ++s) {
    d.set_accepting(s, n.is_accepting(s));
    for (Letter l = 0; l < n.alphabet().size(); ++l) {
      auto succ = n.successors(s, l);
      if (!succ.empty()) d.set_transition(s, l, succ.front());
    }
  }
  return d;
}

}  // namespace cellang
