// cellang: decide cellularity of regular languages and build finite-block
// languages of one-dimensional cellular automata.
//
// Exit status: 0 cellular / check passed, 1 not cellular / check failed,
// 2 usage, input or cap error, or undecided.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cellang/cellang.hpp"

namespace {

using namespace cellang;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct RunConfig {
  std::string regex;
  std::string file;
  std::string alphabet;
  std::string letter;
  int elementary = -1;
  std::string rule_file;
  std::size_t monoid_cap = kDefaultMonoidCap;
  std::size_t maxlen = 8;
  std::size_t maxwit = 3;
  std::string format = "human";
  unsigned jobs = 1;

  bool machine() const { return format == "machine"; }
};

struct Input {
  Nfa nfa;
  std::optional<LocalRule> rule;
};

std::string show(const Word& w) { return w.empty() ? "_" : w; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Same automaton over a larger alphabet; extra letters have no transitions.
Nfa widen(const Nfa& n, const Alphabet& wider) {
  for (char c : n.alphabet().symbols())
    if (!wider.contains(c)) throw Error(std::string("--alphabet lacks letter '") + c + "' used by the input");
  Nfa out(wider, n.state_count());
  for (State s : n.initial()) out.add_initial(s);
  for (State s = 0; s < n.state_count(); ++s) out.set_accepting(s, n.is_accepting(s));
  for (const auto& t : n.transitions()) out.add_transition(t.from, wider.index(n.alphabet().symbol(t.letter)), t.to);
  return out;
}

std::optional<LocalRule> load_rule(const RunConfig& cfg) {
  if (cfg.elementary >= 0) return LocalRule::elementary(static_cast<unsigned>(cfg.elementary));
  if (!cfg.rule_file.empty()) return parse_rule_file(read_file(cfg.rule_file));
  return std::nullopt;
}

/// Resolves exactly one language source. With `allow_claim`, a rule source
/// may be combined with --file (the file is then not the input).
Input load_input(const RunConfig& cfg, bool allow_claim = false) {
  int sources = !cfg.regex.empty() + !cfg.file.empty() + (cfg.elementary >= 0) + !cfg.rule_file.empty();
  bool claim = allow_claim && !cfg.file.empty() && sources == 2 && (cfg.elementary >= 0 || !cfg.rule_file.empty());
  if (sources != 1 && !claim)
    throw Error("give exactly one of --regex, --file, --elementary, --rule-file");

  std::optional<Alphabet> override;
  if (!cfg.alphabet.empty()) override.emplace(cfg.alphabet);

  if (!cfg.regex.empty()) {
    if (!override) throw Error("--regex needs --alphabet");
    return {regex_to_nfa(cfg.regex, *override), std::nullopt};
  }
  if (auto rule = load_rule(cfg)) {
    Nfa n = de_bruijn_nfa(*rule);
    return {override ? widen(n, *override) : n, rule};
  }
  Nfa n = parse_automaton_file(read_file(cfg.file));
  return {override ? widen(n, *override) : n, std::nullopt};
}

Membership membership(const Nfa& n) {
  return [&n](std::string_view w) { return n.accepts(w); };
}

void print_l2(const L2Report& r, bool machine, std::ostream& out) {
  if (r.pass) {
    out << "L2 PASS o=" << r.letter << '\n';
  } else if (r.empty_family) {
    if (machine)
      out << "L2 FAIL o=" << r.letter << " q=" << r.q << " x=" << show(r.x) << " y=" << show(r.y)
          << " o-paths=" << r.o_path_count << " reachable-o-paths=0\n";
    else if (r.o_path_count == 0)
      out << "L2 FAIL o=" << r.letter << " (no o-paths)\n";
    else
      out << "L2 FAIL o=" << r.letter << " (no o-path reachable from state " << r.q << ", reached by x="
          << show(r.x) << ")\n";
  } else {
    out << "L2 FAIL o=" << r.letter << " q=" << r.q << " x=" << show(r.x) << " y=" << show(r.y) << '\n';
    if (!machine)
      out << "  no a, b in L give " << show(r.x) << " a " << r.letter << "^n b " << show(r.y)
          << " in L for every n\n";
  }
}

int cmd_decide(const RunConfig& cfg) {
  Input in = load_input(cfg);
  Decision d = decide_cellularity(in.nfa, DecideOptions{cfg.monoid_cap, cfg.jobs});
  if (!verify_decision(d, membership(in.nfa), cfg.monoid_cap)) {
    std::cerr << "internal error: certificate failed verification\n";
    return kExitError;
  }
  auto& out = std::cout;
  const bool machine = cfg.machine();
  switch (d.verdict) {
    case Verdict::Undecided:
      out << "UNDECIDED cap-exceeded\n";
      if (!machine) out << "  transition monoid has more than " << cfg.monoid_cap << " actions\n";
      return kExitError;
    case Verdict::Cellular: {
      const auto& w = *d.witness;
      out << "CELLULAR o=" << w.letter << '\n';
      if (machine) {
        out << "witness x=" << show(w.x) << " a=" << show(w.a) << " b=" << show(w.b) << " y=" << show(w.y) << '\n';
        out << "states=" << d.minimal.state_count() << " monoid=" << d.monoid_size << '\n';
      } else {
        out << "  receptive letter " << w.letter << ": x a " << w.letter << "^n b y is in L for every n with\n"
            << "  x=" << show(w.x) << " a=" << show(w.a) << " b=" << show(w.b) << " y=" << show(w.y) << '\n'
            << "  minimal automaton: " << d.minimal.state_count() << " states, transition monoid: " << d.monoid_size
            << " actions\n";
      }
      return kExitYes;
    }
    case Verdict::NotCellular:
      break;
  }
  switch (d.reason) {
    case Reason::EmptyOrEpsilonOnly:
      out << "NOT-CELLULAR reason=empty-or-epsilon\n";
      if (!machine) out << "  the language is empty or contains only the empty word\n";
      break;
    case Reason::L1Failure: {
      const auto& [x, y] = *d.l1->counterexample;
      out << "NOT-CELLULAR reason=L1 x=" << show(x) << " y=" << show(y) << '\n';
      if (!machine) out << "  xy is in L but x or y is not: the language is not factorial\n";
      break;
    }
    case Reason::L2FailureAllLetters:
      out << "NOT-CELLULAR reason=L2\n";
      for (const auto& r : d.l2) print_l2(r, machine, out);
      break;
    default:
      break;
  }
  return kExitNo;
}

Dfa minimal_of(const Input& in) { return minimize(determinize(in.nfa)); }

int cmd_l1(const RunConfig& cfg) {
  Input in = load_input(cfg);
  auto r = check_L1(minimal_of(in));
  if (r.pass) {
    std::cout << "L1 PASS\n";
    return kExitYes;
  }
  if (!verify_l1_counterexample(*r.counterexample, membership(in.nfa))) {
    std::cerr << "internal error: certificate failed verification\n";
    return kExitError;
  }
  std::cout << "L1 FAIL x=" << show(r.counterexample->first) << " y=" << show(r.counterexample->second) << '\n';
  return kExitNo;
}

int cmd_l2(const RunConfig& cfg) {
  Input in = load_input(cfg);
  Dfa m = minimal_of(in);
  if (!check_L1(m).pass) {
    std::cout << "L2 SKIPPED reason=L1\n";
    return kExitNo;
  }
  TransitionMonoid monoid;
  try {
    monoid = transition_monoid(m, cfg.monoid_cap);
  } catch (const MonoidCapExceeded&) {
    std::cout << "UNDECIDED cap-exceeded\n";
    return kExitError;
  }
  std::vector<Letter> letters;
  if (cfg.letter.empty()) {
    for (Letter l = 0; l < m.alphabet().size(); ++l) letters.push_back(l);
  } else {
    if (cfg.letter.size() != 1) throw Error("--letter takes a single letter");
    letters.push_back(m.alphabet().index(cfg.letter[0]));
  }
  bool any = false;
  for (Letter o : letters) {
    auto r = check_L2_for(m, o, monoid);
    if (!r.pass && !verify_l2_counterexample(m, r, monoid, membership(in.nfa))) {
      std::cerr << "internal error: certificate failed verification\n";
      return kExitError;
    }
    any = any || r.pass;
    print_l2(r, cfg.machine(), std::cout);
  }
  return any ? kExitYes : kExitNo;
}

int cmd_ca_lang(const RunConfig& cfg) {
  auto rule = load_rule(cfg);
  if (!rule) throw Error("ca-lang needs --elementary or --rule-file");
  std::cout << serialize_automaton(ca_language_dfa(*rule));
  return kExitYes;
}

int cmd_monoid(const RunConfig& cfg) {
  Dfa m = minimal_of(load_input(cfg));
  TransitionMonoid monoid;
  try {
    monoid = transition_monoid(m, cfg.monoid_cap);
  } catch (const MonoidCapExceeded&) {
    std::cout << "UNDECIDED cap-exceeded\n";
    return kExitError;
  }
  std::cout << "MONOID size=" << monoid.size() << " states=" << m.state_count() << '\n';
  for (Letter l = 0; l < m.alphabet().size(); ++l) {
    auto act = StateAction::of_letter(m, l);
    std::cout << "generator letter=" << m.alphabet().symbol(l) << " map=";
    for (State s = 0; s < act.size(); ++s) std::cout << (s ? "," : "") << act(s);
    std::cout << '\n';
  }
  if (!cfg.machine())
    std::cout << "  map lists the image of states 0.." << m.state_count() - 1 << " in order\n";
  return kExitYes;
}

int cmd_oracle_compare(const RunConfig& cfg) {
  Input in = load_input(cfg, /*allow_claim=*/true);
  std::vector<std::string> lines;
  bool ok = true;
  auto report = [&](const std::string& name, std::optional<std::string> disagreement) {
    ok = ok && !disagreement;
    lines.push_back("ORACLE " + name + (disagreement ? " FAIL " + *disagreement : " PASS"));
  };

  const bool claimed = !cfg.file.empty() && in.rule;
  if (claimed) {
    // Compare the claimed automaton in --file against the rule's blocks.
    Nfa claim = parse_automaton_file(read_file(cfg.file));
    if (!cfg.alphabet.empty()) claim = widen(claim, Alphabet(cfg.alphabet));
    std::vector<std::set<Word>> blocks;
    for (std::size_t k = 0; k <= cfg.maxlen; ++k) blocks.push_back(enumerate_blocks(*in.rule, k));
    auto bad = first_disagreement(in.nfa.alphabet(), cfg.maxlen, [&](const Word& w) { return claim.accepts(w); },
                                  [&](const Word& w) { return blocks[w.size()].count(w) > 0; });
    report("blocks", bad ? std::optional<std::string>("word=" + show(*bad)) : std::nullopt);
  } else {
    Dfa m = minimal_of(in);
    auto bad = first_disagreement(m.alphabet(), cfg.maxlen, [&](const Word& w) { return in.nfa.accepts(w); },
                                  [&](const Word& w) { return m.accepts(w); });
    report("language", bad ? std::optional<std::string>("word=" + show(*bad)) : std::nullopt);

    if (in.rule) {
      Dfa ca = ca_language_dfa(*in.rule);
      std::optional<std::string> block_bad;
      for (std::size_t k = 0; k <= cfg.maxlen && !block_bad; ++k) {
        auto blocks = enumerate_blocks(*in.rule, k);
        for_each_word(ca.alphabet(), k, [&](const Word& w) {
          if (w.size() == k && ca.accepts(w) != (blocks.count(w) > 0)) {
            block_bad = "word=" + show(w);
            return false;
          }
          return true;
        });
      }
      report("blocks", block_bad);
    }

    auto l1 = check_L1(m);
    auto brute1 = brute_force_L1(m, cfg.maxlen);
    std::optional<std::string> l1_bad;
    if (l1.pass && brute1)
      l1_bad = "engine=pass oracle-x=" + show(brute1->first) + " oracle-y=" + show(brute1->second);
    else if (!l1.pass && !brute1 && l1.counterexample->first.size() + l1.counterexample->second.size() <= cfg.maxlen)
      l1_bad = "engine-x=" + show(l1.counterexample->first) + " engine-y=" + show(l1.counterexample->second) +
               " oracle=pass";
    report("l1", l1_bad);

    if (l1.pass) {
      TransitionMonoid monoid;
      try {
        monoid = transition_monoid(m, cfg.monoid_cap);
      } catch (const MonoidCapExceeded&) {
        std::cout << "UNDECIDED cap-exceeded\n";
        return kExitError;
      }
      for (Letter o = 0; o < m.alphabet().size(); ++o) {
        auto r = check_L2_for(m, o, monoid);
        auto brute = brute_force_L2(m, m.alphabet().symbol(o), cfg.maxwit);
        std::optional<std::string> bad2;
        if (r.pass && brute)
          bad2 = "engine=pass oracle-q=" + std::to_string(brute->q) + " oracle-y=" + show(brute->y);
        else if (!r.pass && !brute && r.y.size() <= cfg.maxwit)
          bad2 = "engine-q=" + std::to_string(r.q) + " engine-y=" + show(r.y) + " oracle=pass";
        report(std::string("l2 o=") + m.alphabet().symbol(o), bad2);
      }
    }
  }

  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  for (const auto& l : lines) std::cout << l << '\n';
  return ok ? kExitYes : kExitNo;
}

void add_input_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--regex", cfg.regex, "regular expression ('|', '*', parentheses, '_' for the empty word)");
  sub->add_option("--file", cfg.file, "automaton file");
  sub->add_option("--alphabet", cfg.alphabet, "alphabet letters, e.g. ab (extends the input alphabet)");
  sub->add_option("--elementary", cfg.elementary, "elementary CA rule code; input is its block language")
      ->check(CLI::Range(0, 255));
  sub->add_option("--rule-file", cfg.rule_file, "CA rule file; input is its block language");
  sub->add_option("--monoid-cap", cfg.monoid_cap, "give up above this many transition-monoid actions")
      ->check(CLI::PositiveNumber);
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"human", "machine"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide cellularity of regular languages"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* decide = app.add_subcommand("decide", "decide cellularity with a certificate");
  add_input_options(decide, cfg);
  decide->add_option("--jobs", cfg.jobs, "check receptive letters concurrently")->check(CLI::PositiveNumber);

  auto* l1 = app.add_subcommand("l1", "factoriality check");
  add_input_options(l1, cfg);

  auto* l2 = app.add_subcommand("l2", "receptivity check per letter");
  add_input_options(l2, cfg);
  l2->add_option("--letter", cfg.letter, "letter to test (default: all)");

  auto* ca = app.add_subcommand("ca-lang", "print the minimal automaton of a CA's block language");
  ca->add_option("--elementary", cfg.elementary, "elementary rule code")->check(CLI::Range(0, 255));
  ca->add_option("--rule-file", cfg.rule_file, "rule file");

  auto* oracle = app.add_subcommand("oracle-compare", "cross-check the engine against brute-force oracles");
  add_input_options(oracle, cfg);
  oracle->add_option("--maxlen", cfg.maxlen, "word length bound for language, block and L1 oracles");
  oracle->add_option("--maxwit", cfg.maxwit, "word length bound for the L2 oracle");

  auto* monoid = app.add_subcommand("monoid", "print transition-monoid size and generators");
  add_input_options(monoid, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kExitYes : kExitError;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*decide) return cmd_decide(cfg);
    if (*l1) return cmd_l1(cfg);
    if (*l2) return cmd_l2(cfg);
    if (*ca) return cmd_ca_lang(cfg);
    if (*oracle) return cmd_oracle_compare(cfg);
    if (*monoid) return cmd_monoid(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
