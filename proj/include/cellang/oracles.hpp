#pragma once

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "cellang/automaton.hpp"

// Exhaustive, bounded checks that work from the definitions only (word
// enumeration and membership runs). They share no code with the decider
// beyond Dfa::run and serve as independent oracles for it.

namespace cellang {

/// Calls f on every word of length <= maxlen, in shortlex order. Stops
/// early when f returns false; returns false in that case.
inline bool for_each_word(const Alphabet& alphabet, std::size_t maxlen, const std::function<bool(const Word&)>& f) {
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 0;; ++len) {
    for (const auto& w : layer)
      if (!f(w)) return false;
    if (len == maxlen) return true;
    std::vector<Word> next;
    next.reserve(layer.size() * alphabet.size());
    for (const auto& w : layer)
      for (char c : alphabet.symbols()) next.push_back(w + c);
    layer = std::move(next);
  }
}

inline std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t maxlen) {
  std::vector<Word> out;
  for_each_word(alphabet, maxlen, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

/// Factoriality up to a length bound: every split xy of an accepted word
/// of length <= maxlen must have x and y accepted. Returns the first
/// violating (x, y), words in shortlex order and splits by |x|.
inline std::optional<std::pair<Word, Word>> brute_force_L1(const Dfa& m, std::size_t maxlen) {
  std::optional<std::pair<Word, Word>> found;
  for_each_word(m.alphabet(), maxlen, [&](const Word& w) {
    if (!m.accepts(w)) return true;
    for (std::size_t i = 0; i <= w.size(); ++i) {
      Word x = w.substr(0, i), y = w.substr(i);
      if (!m.accepts(x) || !m.accepts(y)) {
        found.emplace(std::move(x), std::move(y));
        return false;
      }
    }
    return true;
  });
  return found;
}

struct BruteL2Failure {
  State q;  // state q_ini.x standing for the class of x
  Word y;
};

/// Receptivity with letter o up to a word-length bound: for every accepting
/// state q and every y in L with |y| <= maxwit, looks for a, b with
/// |a|, |b| <= maxwit such that q.(a o^n b y) is accepting for n = 0..|Q|.
/// The orbit q.a o^n repeats within |Q| steps, so this covers every n.
inline std::optional<BruteL2Failure> brute_force_L2(const Dfa& m, char o, std::size_t maxwit) {
  const auto words = words_up_to(m.alphabet(), maxwit);
  const std::size_t n_max = m.state_count();
  const Word o_str(1, o);
  m.alphabet().index(o);

  std::vector<Word> in_l;
  for (const auto& y : words)
    if (m.accepts(y)) in_l.push_back(y);

  for (State q : m.accepting_states()) {
    // For each a: the states q.a o^n, n = 0..|Q|. For each b: their images.
    std::set<std::vector<State>> joints;
    for (const auto& a : words) {
      std::vector<State> after_o;
      State s = m.run(q, a);
      for (std::size_t n = 0; n <= n_max; ++n) {
        after_o.push_back(s);
        s = m.run(s, o_str);
      }
      for (const auto& b : words) {
        std::vector<State> joint;
        for (State t : after_o) joint.push_back(m.run(t, b));
        joints.insert(std::move(joint));
      }
    }
    for (const auto& y : in_l) {
      bool witnessed = false;
      for (const auto& joint : joints) {
        witnessed = true;
        for (State t : joint)
          if (!m.is_accepting(m.run(t, y))) {
            witnessed = false;
            break;
          }
        if (witnessed) break;
      }
      if (!witnessed) return BruteL2Failure{q, y};
    }
  }
  return std::nullopt;
}

/// First word of length <= maxlen on which two membership tests differ.
inline std::optional<Word> first_disagreement(const Alphabet& alphabet, std::size_t maxlen,
                                              const std::function<bool(const Word&)>& lhs,
                                              const std::function<bool(const Word&)>& rhs) {
  std::optional<Word> found;
  for_each_word(alphabet, maxlen, [&](const Word& w) {
    if (lhs(w) != rhs(w)) {
      found = w;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace cellang
