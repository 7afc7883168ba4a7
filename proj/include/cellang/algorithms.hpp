#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cellang/automaton.hpp"

namespace cellang {

/// Breadth-first search over an implicit graph whose edges are labelled by
/// letters, expanded in alphabet order. Returns the shortlex-least word
/// leading from `start` to a configuration satisfying `goal`.
///
/// `step(config, letter)` yields the successor, or nullopt to prune.
/// Config must be totally ordered.
template <typename Config, typename Step, typename Goal>
std::optional<Word> shortlex_search(const Alphabet& alphabet, Config start, Step&& step,
                                    Goal&& goal) {
  struct Node {
    std::size_t parent;
    Letter letter;
  };
  std::map<Config, std::size_t> seen;
  std::vector<Node> nodes;
  std::deque<std::pair<Config, std::size_t>> queue;

  auto spell = [&](std::size_t idx) {
    Word w;
    while (idx != 0) {
      w.push_back(alphabet.symbol(nodes[idx].letter));
      idx = nodes[idx].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  seen.emplace(start, 0);
  nodes.push_back({0, 0});
  queue.emplace_back(std::move(start), 0);
  // Dequeue order is shortlex order of the discovering words.
  while (!queue.empty()) {
    auto [config, idx] = std::move(queue.front());
    queue.pop_front();
    if (goal(config)) return spell(idx);
    for (Letter l = 0; l < alphabet.size(); ++l) {
      std::optional<Config> next = step(config, l);
      if (!next) continue;
      auto [it, inserted] = seen.emplace(*next, nodes.size());
      if (!inserted) continue;
      nodes.push_back({idx, l});
      queue.emplace_back(std::move(*next), it->second);
    }
  }
  return std::nullopt;
}

/// Shortlex-least word w with d.run(from, w) satisfying `pred`.
template <typename Pred>
std::optional<Word> shortest_word_from(const Dfa& d, State from, Pred&& pred) {
  return shortlex_search(
      d.alphabet(), from,
      [&](State s, Letter l) -> std::optional<State> {
        State t = d.next(s, l);
        if (t == kNoState) return std::nullopt;
        return t;
      },
      [&](State s) { return pred(s); });
}

/// Shortlex-least word leading from the initial state to `target`.
inline std::optional<Word> access_word(const Dfa& d, State target) {
  return shortest_word_from(d, d.initial(), [&](State s) { return s == target; });
}

/// States reachable from `from` (including itself), as a membership mask.
inline std::vector<bool> reachable_from(const Dfa& d, State from) {
  std::vector<bool> seen(d.state_count(), false);
  std::vector<State> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (Letter l = 0; l < d.alphabet().size(); ++l) {
      State t = d.next(s, l);
      if (t != kNoState && !seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

/// Subset construction. The result is complete: the empty subset becomes a
/// sink when some subset has no successor on a letter.
inline Dfa determinize(const Nfa& n) {
  const std::size_t k = n.alphabet().size();
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> subsets;
  std::vector<std::vector<State>> delta;

  auto intern = [&](std::vector<State> s) {
    auto [it, inserted] = ids.emplace(s, static_cast<State>(subsets.size()));
    if (inserted) {
      subsets.push_back(std::move(s));
      delta.emplace_back(k, kNoState);
    }
    return it->second;
  };

  intern(n.initial());
  std::vector<char> mark(n.state_count());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (Letter l = 0; l < k; ++l) {
      std::vector<State> next;
      std::fill(mark.begin(), mark.end(), 0);
      for (State s : subsets[i])
        for (State t : n.successors(s, l))
          if (!mark[t]) {
            mark[t] = 1;
            next.push_back(t);
          }
      std::sort(next.begin(), next.end());
      delta[i][l] = intern(std::move(next));
    }
  }

  Dfa d(n.alphabet(), subsets.size(), 0);
  for (State i = 0; i < subsets.size(); ++i) {
    bool acc = std::any_of(subsets[i].begin(), subsets[i].end(),
                           [&](State s) { return n.is_accepting(s); });
    d.set_accepting(i, acc);
    for (Letter l = 0; l < k; ++l) d.set_transition(i, l, delta[i][l]);
  }
  return d;
}

/// Routes every missing transition to one fresh non-accepting sink. A Dfa
/// that is already complete is returned as is.
inline Dfa complete(const Dfa& d) {
  if (d.is_complete()) return d;
  const State sink = static_cast<State>(d.state_count());
  Dfa out(d.alphabet(), d.state_count() + 1, d.initial());
  for (State s = 0; s < d.state_count(); ++s) {
    out.set_accepting(s, d.is_accepting(s));
    for (Letter l = 0; l < d.alphabet().size(); ++l) {
      State t = d.next(s, l);
      out.set_transition(s, l, t == kNoState ? sink : t);
    }
  }
  for (Letter l = 0; l < d.alphabet().size(); ++l) out.set_transition(sink, l, sink);
  return out;
}

/// Renumbers the reachable part breadth-first from the initial state,
/// letters in alphabet order. Unreachable states are dropped.
inline Dfa canonicalize(const Dfa& d) {
  Dfa c = complete(d);
  std::vector<State> order{c.initial()};
  std::vector<State> rename(c.state_count(), kNoState);
  rename[c.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Letter l = 0; l < c.alphabet().size(); ++l) {
      State t = c.next(order[i], l);
      if (rename[t] == kNoState) {
        rename[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  Dfa out(c.alphabet(), order.size(), 0);
  for (State i = 0; i < order.size(); ++i) {
    out.set_accepting(i, c.is_accepting(order[i]));
    for (Letter l = 0; l < c.alphabet().size(); ++l)
      out.set_transition(i, l, rename[c.next(order[i], l)]);
  }
  return out;
}

/// Minimal complete Dfa for the same language via Moore partition
/// refinement, in canonical numbering. Partial input is completed first.
inline Dfa minimize(const Dfa& input) {
  const Dfa d = canonicalize(input);
  const std::size_t n = d.state_count();
  const std::size_t k = d.alphabet().size();

  std::vector<State> block(n);
  for (State s = 0; s < n; ++s) block[s] = d.is_accepting(s) ? 1 : 0;
  std::size_t block_count = 0;
  for (;;) {
    // Signature: own block followed by the blocks of all successors.
    std::map<std::vector<State>, State> sig_ids;
    std::vector<State> refined(n);
    for (State s = 0; s < n; ++s) {
      std::vector<State> sig{block[s]};
      for (Letter l = 0; l < k; ++l) sig.push_back(block[d.next(s, l)]);
      auto [it, _] = sig_ids.emplace(std::move(sig), static_cast<State>(sig_ids.size()));
      refined[s] = it->second;
    }
    block = std::move(refined);
    if (sig_ids.size() == block_count) break;
    block_count = sig_ids.size();
  }

  Dfa quotient(d.alphabet(), block_count, block[d.initial()]);
  for (State s = 0; s < n; ++s) {
    quotient.set_accepting(block[s], d.is_accepting(s));
    for (Letter l = 0; l < k; ++l) quotient.set_transition(block[s], l, block[d.next(s, l)]);
  }
  return canonicalize(quotient);
}

/// The same machine started at q, minimized; accepts L_q.
inline Dfa left_language_from(const Dfa& d, State q) {
  Dfa copy = d;
  copy.set_initial(q);
  return minimize(copy);
}

/// Shortlex-least word in L(a) \ L(b), or nullopt when L(a) ⊆ L(b).
inline std::optional<Word> is_subset(const Dfa& a, const Dfa& b) {
  if (!(a.alphabet() == b.alphabet())) throw Error("is_subset: alphabets differ");
  using Pair = std::pair<State, State>;  // kNoState stands for a missing target
  auto step1 = [](const Dfa& d, State s, Letter l) { return s == kNoState ? kNoState : d.next(s, l); };
  auto acc = [](const Dfa& d, State s) { return s != kNoState && d.is_accepting(s); };
  return shortlex_search(
      a.alphabet(), Pair{a.initial(), b.initial()},
      [&](const Pair& p, Letter l) -> std::optional<Pair> {
        State sa = step1(a, p.first, l);
        if (sa == kNoState) return std::nullopt;
        return Pair{sa, step1(b, p.second, l)};
      },
      [&](const Pair& p) { return acc(a, p.first) && !acc(b, p.second); });
}

inline bool equivalent(const Dfa& a, const Dfa& b) { return !is_subset(a, b) && !is_subset(b, a); }

/// Shortlex-least accepted word, or nullopt for the empty language.
inline std::optional<Word> is_empty(const Dfa& d) {
  return shortest_word_from(d, d.initial(), [&](State s) { return d.is_accepting(s); });
}

inline std::optional<Word> is_empty(const Nfa& n) {
  return shortlex_search(
      n.alphabet(), n.initial(),
      [&](const std::vector<State>& set, Letter l) -> std::optional<std::vector<State>> {
        std::vector<State> next;
        for (State s : set)
          for (State t : n.successors(s, l)) next.push_back(t);
        if (next.empty()) return std::nullopt;
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        return next;
      },
      [&](const std::vector<State>& set) {
        return std::any_of(set.begin(), set.end(), [&](State s) { return n.is_accepting(s); });
      });
}

/// Complement of a Dfa (completed first).
inline Dfa complement(const Dfa& d) {
  Dfa c = complete(d);
  for (State s = 0; s < c.state_count(); ++s) c.set_accepting(s, !c.is_accepting(s));
  return c;
}

/// Product automaton accepting L(a) ∩ L(b), reachable part only.
inline Dfa intersect(const Dfa& a_in, const Dfa& b_in) {
  const Dfa a = complete(a_in);
  const Dfa b = complete(b_in);
  if (!(a.alphabet() == b.alphabet())) throw Error("intersect: alphabets differ");
  std::map<std::pair<State, State>, State> ids;
  std::vector<std::pair<State, State>> pairs{{a.initial(), b.initial()}};
  ids.emplace(pairs.front(), 0);
  std::vector<std::vector<State>> delta;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    delta.emplace_back();
    for (Letter l = 0; l < a.alphabet().size(); ++l) {
      std::pair<State, State> next{a.next(pairs[i].first, l), b.next(pairs[i].second, l)};
      auto [it, inserted] = ids.emplace(next, static_cast<State>(pairs.size()));
      if (inserted) pairs.push_back(next);
      delta[i].push_back(it->second);
    }
  }
  Dfa out(a.alphabet(), pairs.size(), 0);
  for (State i = 0; i < pairs.size(); ++i) {
    out.set_accepting(i, a.is_accepting(pairs[i].first) && b.is_accepting(pairs[i].second));
    for (Letter l = 0; l < a.alphabet().size(); ++l) out.set_transition(i, l, delta[i][l]);
  }
  return out;
}

}  // namespace cellang
