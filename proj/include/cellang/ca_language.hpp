#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cellang/algorithms.hpp"
#include "cellang/automaton.hpp"
#include "cellang/automaton_io.hpp"
#include "cellang/errors.hpp"

namespace cellang {

inline constexpr std::size_t kMaxDeBruijnStates = 4096;
inline constexpr std::size_t kMaxEnumeratedWindows = 10'000'000;

/// Local rule of a one-dimensional cellular automaton: radius r and a
/// table giving the new cell for each window of 2r+1 cells. Windows are
/// indexed in base |Γ| with the leftmost cell most significant and digits
/// in alphabet order.
class LocalRule {
 public:
  LocalRule(Alphabet alphabet, std::size_t radius, std::vector<Letter> table)
      : alphabet_(std::move(alphabet)), radius_(radius), table_(std::move(table)) {
    if (table_.size() != window_count())
      throw Error("rule table needs " + std::to_string(window_count()) + " entries");
    for (Letter l : table_)
      if (l >= alphabet_.size()) throw Error("rule output out of alphabet");
  }

  /// Elementary rule (radius 1 over {0,1}) from its 0..255 code: bit i of
  /// the code is the output for the window whose binary value is i.
  static LocalRule elementary(unsigned code) {
    if (code > 255) throw Error("elementary rule code must be in 0..255");
    std::vector<Letter> table(8);
    for (unsigned i = 0; i < 8; ++i) table[i] = (code >> i) & 1u;
    return LocalRule(Alphabet("01"), 1, std::move(table));
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t radius() const noexcept { return radius_; }
  std::size_t window_size() const noexcept { return 2 * radius_ + 1; }
  std::size_t window_count() const { return checked_power(alphabet_.size(), window_size()); }
  const std::vector<Letter>& table() const noexcept { return table_; }

  Letter output(std::size_t window_index) const { return table_.at(window_index); }

  /// Output for a window spelled as letters.
  char operator()(std::string_view window) const {
    if (window.size() != window_size()) throw Error("window has the wrong length");
    return alphabet_.symbol(output(window_index(window)));
  }

  std::size_t window_index(std::string_view window) const {
    std::size_t idx = 0;
    for (char c : window) idx = idx * alphabet_.size() + alphabet_.index(c);
    return idx;
  }

  static std::size_t checked_power(std::size_t base, std::size_t exp) {
    std::size_t v = 1;
    for (std::size_t i = 0; i < exp; ++i) {
      if (v > (std::size_t{1} << 40) / base) throw EnumerationCapExceeded("window space too large");
      v *= base;
    }
    return v;
  }

 private:
  Alphabet alphabet_;
  std::size_t radius_;
  std::vector<Letter> table_;
};

/// One application of the rule to a finite word: position i of the output
/// is the rule applied to w[i .. i+2r].
inline Word apply_rule_block(const LocalRule& rule, std::string_view w) {
  const std::size_t span = 2 * rule.radius();
  if (w.size() < span)
    throw WindowTooShort("word of length " + std::to_string(w.size()) + " is shorter than 2r = " +
                         std::to_string(span));
  Word out;
  out.reserve(w.size() - span);
  for (std::size_t i = 0; i + span < w.size(); ++i) out.push_back(rule(w.substr(i, span + 1)));
  return out;
}

/// De Bruijn acceptor of the finite blocks: states are the words of length
/// 2r (state index in base |Γ|), all initial and accepting; each window w
/// yields an edge w[0..2r) -> w[1..2r+1) labelled with the rule's output.
inline Nfa de_bruijn_nfa(const LocalRule& rule) {
  const std::size_t k = rule.alphabet().size();
  const std::size_t states = LocalRule::checked_power(k, 2 * rule.radius());
  if (states > kMaxDeBruijnStates)
    throw StateCapExceeded("De Bruijn graph has " + std::to_string(states) + " states (cap " +
                           std::to_string(kMaxDeBruijnStates) + ")");
  Nfa n(rule.alphabet(), states);
  for (State s = 0; s < states; ++s) {
    n.add_initial(s);
    n.set_accepting(s);
  }
  for (std::size_t w = 0; w < rule.window_count(); ++w) {
    State from = static_cast<State>(w / k);       // drop the last cell
    State to = static_cast<State>(w % states);    // drop the first cell
    n.add_transition(from, rule.output(w), to);
  }
  return n;
}

/// All blocks of length k: images of every word of length k + 2r.
inline std::set<Word> enumerate_blocks(const LocalRule& rule, std::size_t k,
                                       std::size_t cap = kMaxEnumeratedWindows) {
  const std::size_t len = k + 2 * rule.radius();
  const std::size_t count = LocalRule::checked_power(rule.alphabet().size(), len);
  if (count > cap)
    throw EnumerationCapExceeded(std::to_string(count) + " windows exceed the cap of " + std::to_string(cap));
  std::set<Word> out;
  const auto& sym = rule.alphabet().symbols();
  const std::size_t base = sym.size();
  Word w(len, sym[0]);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t v = i;
    for (std::size_t p = len; p-- > 0;) {
      w[p] = sym[v % base];
      v /= base;
    }
    out.insert(apply_rule_block(rule, w));
  }
  return out;
}

/// Minimal Dfa of the finite-block language.
inline Dfa ca_language_dfa(const LocalRule& rule) { return minimize(determinize(de_bruijn_nfa(rule))); }

/// Reads the rule format:
///
///   alphabet <letter> ...
///   radius <r>
///   rule <window> <output>     (one line per window)
inline LocalRule parse_rule_file(std::string_view text) {
  auto lines = detail::tokenize_lines(text);
  std::optional<Alphabet> alphabet;
  std::optional<std::size_t> radius;
  std::vector<Letter> table;
  std::vector<bool> defined;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto& toks = lines[i];
    if (toks.empty()) continue;
    if (toks[0] == "alphabet") {
      if (alphabet) throw FormatError(lineno, "duplicate header 'alphabet'");
      std::string letters;
      for (std::size_t t = 1; t < toks.size(); ++t) letters += detail::parse_letter_token(toks[t], lineno);
      try {
        alphabet.emplace(letters);
      } catch (const InvalidAlphabet& e) {
        throw FormatError(lineno, e.what());
      }
    } else if (toks[0] == "radius") {
      if (!alphabet) throw FormatError(lineno, "radius before alphabet");
      if (radius) throw FormatError(lineno, "duplicate header 'radius'");
      if (toks.size() != 2) throw FormatError(lineno, "radius takes one integer");
      radius = detail::parse_count(toks[1], lineno);
      std::size_t windows = 0;
      try {
        windows = LocalRule::checked_power(alphabet->size(), 2 * *radius + 1);
      } catch (const EnumerationCapExceeded&) {
        throw FormatError(lineno, "radius too large");
      }
      if (windows > kMaxEnumeratedWindows) throw FormatError(lineno, "radius too large");
      table.assign(windows, 0);
      defined.assign(windows, false);
    } else if (toks[0] == "rule") {
      if (!radius) throw FormatError(lineno, "rule before radius");
      if (toks.size() != 3) throw FormatError(lineno, "rule takes <window> <output>");
      const std::string& window = toks[1];
      if (window.size() != 2 * *radius + 1)
        throw FormatError(lineno, "window '" + window + "' must have length " + std::to_string(2 * *radius + 1));
      std::size_t idx = 0;
      for (char c : window) {
        auto l = alphabet->find(c);
        if (!l) throw FormatError(lineno, std::string("unknown letter '") + c + "'");
        idx = idx * alphabet->size() + *l;
      }
      auto out = alphabet->find(detail::parse_letter_token(toks[2], lineno));
      if (!out) throw FormatError(lineno, "unknown output letter '" + toks[2] + "'");
      if (defined[idx]) throw FormatError(lineno, "duplicate window '" + window + "'");
      defined[idx] = true;
      table[idx] = *out;
    } else {
      throw FormatError(lineno, "unknown directive '" + toks[0] + "'");
    }
  }
  if (!alphabet) throw FormatError(lines.size(), "missing header 'alphabet'");
  if (!radius) throw FormatError(lines.size(), "missing header 'radius'");
  for (std::size_t i = 0; i < defined.size(); ++i)
    if (!defined[i]) throw FormatError(lines.size(), "rule table is missing window #" + std::to_string(i));
  return LocalRule(*alphabet, *radius, std::move(table));
}

}  // namespace cellang
