#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "cellang/automaton.hpp"
#include "cellang/errors.hpp"

namespace cellang {

/// Total map Q -> Q: the action of some word on a complete Dfa.
class StateAction {
 public:
  StateAction() = default;
  explicit StateAction(std::vector<State> mapping) : mapping_(std::move(mapping)) {}

  static StateAction identity(std::size_t n) {
    std::vector<State> m(n);
    for (State s = 0; s < n; ++s) m[s] = s;
    return StateAction(std::move(m));
  }

  static StateAction of_letter(const Dfa& d, Letter l) {
    std::vector<State> m(d.state_count());
    for (State s = 0; s < m.size(); ++s) m[s] = d.next(s, l);
    return StateAction(std::move(m));
  }

  static StateAction of_word(const Dfa& d, std::string_view w) {
    std::vector<State> m(d.state_count());
    for (State s = 0; s < m.size(); ++s) m[s] = d.run(s, w);
    return StateAction(std::move(m));
  }

  std::size_t size() const noexcept { return mapping_.size(); }
  State operator()(State s) const { return mapping_.at(s); }
  const std::vector<State>& mapping() const noexcept { return mapping_; }

  /// Action of "this word, then other's word".
  StateAction then(const StateAction& other) const {
    std::vector<State> m(mapping_.size());
    for (std::size_t s = 0; s < m.size(); ++s) m[s] = other.mapping_[mapping_[s]];
    return StateAction(std::move(m));
  }

  /// Image of a set of states, sorted and deduplicated.
  std::vector<State> image(const std::vector<State>& states) const {
    std::vector<State> out;
    out.reserve(states.size());
    for (State s : states) out.push_back(mapping_.at(s));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  auto operator<=>(const StateAction&) const = default;

 private:
  std::vector<State> mapping_;
};

struct MonoidElement {
  StateAction action;
  Word word;  // shortlex-least word inducing the action
};

/// All distinct actions of words on a complete Dfa, in the breadth-first
/// order in which they are first reached (identity first).
class TransitionMonoid {
 public:
  const std::vector<MonoidElement>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }
  const MonoidElement& operator[](std::size_t i) const { return elements_.at(i); }

  /// Index of an element with this action, if present.
  std::optional<std::size_t> find(const StateAction& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  friend TransitionMonoid transition_monoid(const Dfa&, std::size_t);
  std::vector<MonoidElement> elements_;
  std::map<StateAction, std::size_t> index_;
};

inline constexpr std::size_t kDefaultMonoidCap = 1'000'000;

/// Enumerates the transition monoid of a complete Dfa. Throws
/// MonoidCapExceeded as soon as more than `cap` actions are found.
inline TransitionMonoid transition_monoid(const Dfa& d, std::size_t cap = kDefaultMonoidCap) {
  if (!d.is_complete()) throw Error("transition_monoid: Dfa must be complete");
  if (cap == 0) throw Error("transition_monoid: cap must be positive");
  std::vector<StateAction> letters;
  for (Letter l = 0; l < d.alphabet().size(); ++l) letters.push_back(StateAction::of_letter(d, l));

  TransitionMonoid m;
  auto add = [&](StateAction a, Word w) {
    auto [it, inserted] = m.index_.emplace(a, m.elements_.size());
    if (!inserted) return;
    if (m.elements_.size() >= cap) throw MonoidCapExceeded(cap);
    m.elements_.push_back({std::move(a), std::move(w)});
  };
  add(StateAction::identity(d.state_count()), Word{});
  // elements_ doubles as the BFS queue; words grow in shortlex order.
  for (std::size_t i = 0; i < m.elements_.size(); ++i)
    for (Letter l = 0; l < letters.size(); ++l) {
      StateAction next = m.elements_[i].action.then(letters[l]);
      add(std::move(next), m.elements_[i].word + d.alphabet().symbol(l));
    }
  return m;
}

}  // namespace cellang
