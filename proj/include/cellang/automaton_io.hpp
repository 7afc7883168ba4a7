#pragma once

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cellang/automaton.hpp"
#include "cellang/errors.hpp"

namespace cellang {

namespace detail {

/// Splits text into lines of whitespace-separated tokens, dropping '#'
/// comments. Blank lines are kept (as empty token lists) so that line
/// numbers stay 1-based and exact.
inline std::vector<std::vector<std::string>> tokenize_lines(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> tokens;
    std::istringstream in{std::string(line)};
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    lines.push_back(std::move(tokens));
    if (end == text.size()) break;
    pos = end + 1;
    if (pos == text.size()) break;
  }
  return lines;
}

inline std::size_t parse_count(const std::string& tok, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw FormatError(line, "expected a non-negative integer, got '" + tok + "'");
  return value;
}

inline char parse_letter_token(const std::string& tok, std::size_t line) {
  if (tok.size() != 1) throw FormatError(line, "letters are single characters, got '" + tok + "'");
  return tok[0];
}

}  // namespace detail

/// Reads the line-based automaton format:
///
///   alphabet <letter> ...
///   states <count>
///   initial <id> ...
///   accepting [<id> ...]
///   trans <from> <letter> <to>     (repeatable)
///
/// The four headers must each appear exactly once, in this order, before
/// any trans line.
inline Nfa parse_automaton_file(std::string_view text) {
  static constexpr std::string_view headers[] = {"alphabet", "states", "initial", "accepting"};
  auto lines = detail::tokenize_lines(text);

  std::optional<Alphabet> alphabet;
  std::optional<Nfa> nfa;
  std::size_t next_header = 0;
  std::size_t state_count = 0;

  auto state_id = [&](const std::string& tok, std::size_t line) {
    std::size_t id = detail::parse_count(tok, line);
    if (id >= state_count)
      throw FormatError(line, "state " + tok + " out of range (states " + std::to_string(state_count) + ")");
    return static_cast<State>(id);
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto& toks = lines[i];
    if (toks.empty()) continue;
    const std::string& key = toks[0];

    if (key == "trans") {
      if (next_header < 4) throw FormatError(lineno, "trans before all headers");
      if (toks.size() != 4) throw FormatError(lineno, "trans takes <from> <letter> <to>");
      State from = state_id(toks[1], lineno);
      char c = detail::parse_letter_token(toks[2], lineno);
      auto l = alphabet->find(c);
      if (!l) throw FormatError(lineno, std::string("unknown letter '") + c + "'");
      nfa->add_transition(from, *l, state_id(toks[3], lineno));
      continue;
    }

    std::size_t which = 0;
    while (which < 4 && headers[which] != key) ++which;
    if (which == 4) throw FormatError(lineno, "unknown directive '" + key + "'");
    if (which < next_header) throw FormatError(lineno, "duplicate header '" + key + "'");
    if (which > next_header)
      throw FormatError(lineno, "expected header '" + std::string(headers[next_header]) + "'");
    ++next_header;

    switch (which) {
      case 0: {
        std::string letters;
        for (std::size_t t = 1; t < toks.size(); ++t) letters.push_back(detail::parse_letter_token(toks[t], lineno));
        try {
          alphabet.emplace(letters);
        } catch (const InvalidAlphabet& e) {
          throw FormatError(lineno, e.what());
        }
        break;
      }
      case 1:
        if (toks.size() != 2) throw FormatError(lineno, "states takes one count");
        state_count = detail::parse_count(toks[1], lineno);
        nfa.emplace(*alphabet, state_count);
        break;
      case 2:
        for (std::size_t t = 1; t < toks.size(); ++t) nfa->add_initial(state_id(toks[t], lineno));
        break;
      case 3:
        for (std::size_t t = 1; t < toks.size(); ++t) nfa->set_accepting(state_id(toks[t], lineno));
        break;
    }
  }
  if (next_header < 4)
    throw FormatError(lines.size(), "missing header '" + std::string(headers[next_header]) + "'");
  return std::move(*nfa);
}

/// Writes the automaton in the file format: headers, then trans lines
/// sorted by (state, letter in alphabet order, target).
inline std::string serialize_automaton(const Nfa& n) {
  std::string out = "alphabet";
  for (char c : n.alphabet().symbols()) (out += ' ') += c;
  out += "\nstates " + std::to_string(n.state_count()) + "\ninitial";
  for (State s : n.initial()) out += " " + std::to_string(s);
  out += "\naccepting";
  for (State s = 0; s < n.state_count(); ++s)
    if (n.is_accepting(s)) out += " " + std::to_string(s);
  out += '\n';
  for (const auto& t : n.transitions()) {
    out += "trans " + std::to_string(t.from) + ' ' + n.alphabet().symbol(t.letter) + ' ' +
           std::to_string(t.to) + '\n';
  }
  return out;
}

inline std::string serialize_automaton(const Dfa& d) { return serialize_automaton(d.to_nfa()); }

}  // namespace cellang
