#pragma once

#include <algorithm>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cellang/algorithms.hpp"
#include "cellang/automaton.hpp"
#include "cellang/monoid.hpp"
#include "cellang/regex.hpp"

// Cellularity of a regular language L is decided on its minimal complete
// automaton M(L). L is cellular iff it is factorial (every factor of a word
// of L is in L) and receptive (some letter o lets any x, y in L be joined as
// x a o^n b y in L for all n, with a, b independent of n).
//
// Factoriality holds iff M(L) is a sink automaton (a unique non-accepting
// state, absorbing) and L_q ⊆ L for every accepting q. Receptivity with a
// letter o holds iff L(o,q) = L for every accepting q, where L(o,q) is the
// union over the o-orbits P reachable from q and the word actions b of
// the intersections of L_{p.b} for p in P.

namespace cellang {

class EmptyFamily : public Error {
 public:
  EmptyFamily() : Error("no o-path is reachable from the state") {}
};

using WordPair = std::pair<Word, Word>;

// ---------------------------------------------------------------------------
// Factoriality

struct L1Report {
  bool pass = true;
  std::optional<WordPair> counterexample;  // (x, y): xy in L, x or y not in L
};

/// Factoriality check on a minimal complete Dfa.
inline L1Report check_L1(const Dfa& m) {
  std::vector<State> rejecting;
  for (State s = 0; s < m.state_count(); ++s)
    if (!m.is_accepting(s)) rejecting.push_back(s);
  if (rejecting.empty()) return {};

  // A rejecting state from which acceptance is still possible gives x not
  // in L with xy in L.
  for (State h : rejecting) {
    auto y = shortest_word_from(m, h, [&](State s) { return m.is_accepting(s); });
    if (!y) continue;
    auto x = access_word(m, h);
    if (!x) throw Error("check_L1: automaton has unreachable states");
    return {false, WordPair{*x, *y}};
  }

  // Remaining: one absorbing rejecting state. Check L_q ⊆ L.
  for (State q : m.accepting_states()) {
    Dfa from_q = m;
    from_q.set_initial(q);
    if (auto c = is_subset(from_q, m)) {
      auto d = access_word(m, q);
      if (!d) throw Error("check_L1: automaton has unreachable states");
      return {false, WordPair{*d, *c}};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// o-paths

/// The o-orbit [start, start.o, start.o^2, ...] up to its first repetition.
struct OPath {
  State start;
  std::vector<State> orbit;

  bool operator==(const OPath&) const = default;
};

/// One o-path per accepting state whose whole o-orbit stays accepting.
inline std::vector<OPath> o_paths(const Dfa& m, Letter o) {
  std::vector<OPath> out;
  for (State q : m.accepting_states()) {
    std::vector<State> orbit;
    std::vector<bool> seen(m.state_count(), false);
    bool ok = true;
    for (State s = q; !seen[s]; s = m.next(s, o)) {
      if (!m.is_accepting(s)) {
        ok = false;
        break;
      }
      seen[s] = true;
      orbit.push_back(s);
    }
    if (ok) out.push_back({q, std::move(orbit)});
  }
  return out;
}

/// o-paths whose start state is reachable from q.
inline std::vector<OPath> reachable_o_paths(const Dfa& m, Letter o, State q) {
  auto reach = reachable_from(m, q);
  std::vector<OPath> out;
  for (auto& p : o_paths(m, o))
    if (reach[p.start]) out.push_back(std::move(p));
  return out;
}

// ---------------------------------------------------------------------------
// L(o,q)

using StateSet = std::vector<State>;  // sorted, no duplicates

namespace detail {

inline bool is_subset_of(const StateSet& a, const StateSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Keeps only the ⊆-minimal sets, sorted by (size, lexicographic).
inline std::vector<StateSet> minimal_sets(std::vector<StateSet> sets) {
  std::sort(sets.begin(), sets.end(), [](const StateSet& a, const StateSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<StateSet> kept;
  for (auto& s : sets) {
    bool redundant = std::any_of(kept.begin(), kept.end(), [&](const StateSet& k) { return is_subset_of(k, s); });
    if (!redundant) kept.push_back(std::move(s));
  }
  return kept;
}

inline bool all_accepting(const Dfa& m, const StateSet& s) {
  return std::all_of(s.begin(), s.end(), [&](State q) { return m.is_accepting(q); });
}

inline StateSet step_set(const Dfa& m, const StateSet& s, Letter l) {
  StateSet out;
  out.reserve(s.size());
  for (State q : s) out.push_back(m.next(q, l));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Advances a union of intersection languages by one letter: drops sets
/// that hit the sink and keeps the antichain of minimal sets.
inline std::vector<StateSet> step_family(const Dfa& m, const std::vector<StateSet>& family, Letter l,
                                         std::optional<State> sink) {
  std::vector<StateSet> next;
  next.reserve(family.size());
  for (const auto& s : family) {
    StateSet t = step_set(m, s, l);
    if (sink && std::binary_search(t.begin(), t.end(), *sink)) continue;
    next.push_back(std::move(t));
  }
  return minimal_sets(std::move(next));
}

}  // namespace detail

/// One member of the family defining L(o,q): the image f(P) of an o-path
/// orbit under a word action, with the indices that produced it.
struct FamilyMember {
  StateSet states;
  std::size_t path_index;    // into ReceptiveLanguage::paths()
  std::size_t monoid_index;  // into the transition monoid
};

/// L(o,q) as the union over members S of ∩_{s in S} L_s.
class ReceptiveLanguage {
 public:
  ReceptiveLanguage(const Dfa& m, std::vector<OPath> paths, std::vector<FamilyMember> members)
      : m_(&m), paths_(std::move(paths)), members_(std::move(members)) {}

  const std::vector<OPath>& paths() const noexcept { return paths_; }
  const std::vector<FamilyMember>& members() const noexcept { return members_; }

  std::vector<StateSet> sets() const {
    std::vector<StateSet> out;
    for (const auto& mem : members_) out.push_back(mem.states);
    return out;
  }

  /// Index of the first member whose intersection language contains w.
  std::optional<std::size_t> covering_member(std::string_view w) const {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      const auto& s = members_[i].states;
      if (std::all_of(s.begin(), s.end(), [&](State q) { return m_->is_accepting(m_->run(q, w)); })) return i;
    }
    return std::nullopt;
  }

  bool accepts(std::string_view w) const { return covering_member(w).has_value(); }

  /// Explicit deterministic machine whose states are antichains of subsets.
  Dfa to_dfa() const {
    const auto sink = m_->sink();
    std::map<std::vector<StateSet>, State> ids;
    std::vector<std::vector<StateSet>> configs{detail::minimal_sets(sets())};
    ids.emplace(configs.front(), 0);
    std::vector<std::vector<State>> delta;
    for (std::size_t i = 0; i < configs.size(); ++i) {
      delta.emplace_back();
      for (Letter l = 0; l < m_->alphabet().size(); ++l) {
        auto next = detail::step_family(*m_, configs[i], l, sink);
        auto [it, inserted] = ids.emplace(next, static_cast<State>(configs.size()));
        if (inserted) configs.push_back(std::move(next));
        delta[i].push_back(it->second);
      }
    }
    Dfa out(m_->alphabet(), configs.size(), 0);
    for (State i = 0; i < configs.size(); ++i) {
      out.set_accepting(i, std::any_of(configs[i].begin(), configs[i].end(),
                                       [&](const StateSet& s) { return detail::all_accepting(*m_, s); }));
      for (Letter l = 0; l < m_->alphabet().size(); ++l) out.set_transition(i, l, delta[i][l]);
    }
    return out;
  }

 private:
  const Dfa* m_;
  std::vector<OPath> paths_;
  std::vector<FamilyMember> members_;
};

/// Builds L(o,q) from the o-paths reachable from q and the monoid actions.
/// Members containing the sink (empty intersection) and supersets of other
/// members are dropped. Throws EmptyFamily when no o-path is reachable.
inline ReceptiveLanguage build_L_oq(const Dfa& m, Letter o, State q, const TransitionMonoid& monoid) {
  auto paths = reachable_o_paths(m, o, q);
  if (paths.empty()) throw EmptyFamily();
  const auto sink = m.sink();

  std::map<StateSet, FamilyMember> first_seen;
  for (std::size_t p = 0; p < paths.size(); ++p)
    for (std::size_t f = 0; f < monoid.size(); ++f) {
      StateSet img = monoid[f].action.image(paths[p].orbit);
      if (sink && std::binary_search(img.begin(), img.end(), *sink)) continue;
      first_seen.try_emplace(img, FamilyMember{img, p, f});
    }
  std::vector<StateSet> sets;
  for (const auto& [s, _] : first_seen) sets.push_back(s);
  std::vector<FamilyMember> members;
  for (auto& s : detail::minimal_sets(std::move(sets))) members.push_back(first_seen.at(s));
  return ReceptiveLanguage(m, std::move(paths), std::move(members));
}

// ---------------------------------------------------------------------------
// Receptivity

struct L2Report {
  char letter = 0;
  bool pass = false;
  std::size_t o_path_count = 0;  // o-paths in the whole automaton
  // On failure:
  State q = kNoState;
  Word x;                     // q_ini.x = q
  Word y;                     // y in L \ L(o,q)
  bool empty_family = false;  // no o-path reachable from q
};

/// Shortlex-least word of L not in the union of intersection languages.
inline std::optional<Word> find_uncovered(const Dfa& m, const std::vector<StateSet>& family) {
  const auto sink = m.sink();
  using Config = std::pair<State, std::vector<StateSet>>;
  return shortlex_search(
      m.alphabet(), Config{m.initial(), detail::minimal_sets(family)},
      [&](const Config& c, Letter l) -> std::optional<Config> {
        State t = m.next(c.first, l);
        if (sink && t == *sink) return std::nullopt;
        return Config{t, detail::step_family(m, c.second, l, sink)};
      },
      [&](const Config& c) {
        if (!m.is_accepting(c.first)) return false;
        return std::none_of(c.second.begin(), c.second.end(),
                            [&](const StateSet& s) { return detail::all_accepting(m, s); });
      });
}

/// Receptivity with letter o, on a minimal Dfa that passed check_L1.
inline L2Report check_L2_for(const Dfa& m, Letter o, const TransitionMonoid& monoid) {
  L2Report r;
  r.letter = m.alphabet().symbol(o);
  r.o_path_count = o_paths(m, o).size();
  for (State q : m.accepting_states()) {
    auto fail = [&](Word y, bool empty) {
      r.pass = false;
      r.q = q;
      r.x = access_word(m, q).value();
      r.y = std::move(y);
      r.empty_family = empty;
      return r;
    };
    try {
      auto lang = build_L_oq(m, o, q, monoid);
      if (auto y = find_uncovered(m, lang.sets())) return fail(*y, false);
    } catch (const EmptyFamily&) {
      // L(o,q) is empty; the shortest word of L witnesses L != L(o,q).
      return fail(is_empty(m).value_or(Word{}), true);
    }
  }
  r.pass = true;
  return r;
}

/// For x, y in L, words a and b with x a o^n b y in L for every n, taken
/// from the construction of L(o, q_ini.x). Nullopt if y is not covered.
inline std::optional<WordPair> receptive_witness(const Dfa& m, Letter o, const TransitionMonoid& monoid,
                                                 std::string_view x, std::string_view y) {
  State q = m.run(x);
  if (!m.is_accepting(q) || !m.accepts(y)) return std::nullopt;
  try {
    auto lang = build_L_oq(m, o, q, monoid);
    auto idx = lang.covering_member(y);
    if (!idx) return std::nullopt;
    const auto& member = lang.members()[*idx];
    State start = lang.paths()[member.path_index].start;
    Word a = shortest_word_from(m, q, [&](State s) { return s == start; }).value();
    return WordPair{std::move(a), monoid[member.monoid_index].word};
  } catch (const EmptyFamily&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Transitivity and prolongability diagnostics

namespace detail {

/// Shortlex-least w in L such that no state of start.w lies in `targets`.
inline std::optional<Word> union_uncovered(const Dfa& m, const StateSet& start, const std::vector<bool>& targets) {
  const auto sink = m.sink();
  using Config = std::pair<State, StateSet>;
  return shortlex_search(
      m.alphabet(), Config{m.initial(), start},
      [&](const Config& c, Letter l) -> std::optional<Config> {
        State t = m.next(c.first, l);
        if (sink && t == *sink) return std::nullopt;
        return Config{t, step_set(m, c.second, l)};
      },
      [&](const Config& c) {
        return m.is_accepting(c.first) &&
               std::none_of(c.second.begin(), c.second.end(), [&](State s) { return targets[s]; });
      });
}

}  // namespace detail

struct L3Report {
  bool pass = true;
  std::optional<WordPair> counterexample;  // (x, y) with no u in L making xuy in L
};

inline L3Report check_L3(const Dfa& m) {
  std::vector<bool> accepting(m.state_count());
  for (State s = 0; s < m.state_count(); ++s) accepting[s] = m.is_accepting(s);
  for (State q : m.accepting_states()) {
    auto reach = reachable_from(m, q);
    StateSet start;
    for (State s = 0; s < m.state_count(); ++s)
      if (reach[s] && accepting[s]) start.push_back(s);
    if (auto y = detail::union_uncovered(m, start, accepting))
      return {false, WordPair{access_word(m, q).value(), *y}};
  }
  return {};
}

struct L4Report {
  bool pass = true;
  std::optional<Word> counterexample;  // u in L with no nonempty s, t in L making sut in L
};

inline L4Report check_L4(const Dfa& m) {
  const std::size_t k = m.alphabet().size();
  // Accepting states entered after a nonempty prefix.
  std::vector<bool> after_nonempty(m.state_count(), false);
  for (Letter l = 0; l < k; ++l) {
    auto reach = reachable_from(m, m.next(m.initial(), l));
    for (State s = 0; s < m.state_count(); ++s)
      if (reach[s]) after_nonempty[s] = true;
  }
  StateSet start;
  for (State s = 0; s < m.state_count(); ++s)
    if (after_nonempty[s] && m.is_accepting(s)) start.push_back(s);
  // Accepting states with an accepting successor.
  std::vector<bool> extendable(m.state_count(), false);
  for (State s = 0; s < m.state_count(); ++s) {
    if (!m.is_accepting(s)) continue;
    for (Letter l = 0; l < k; ++l)
      if (m.is_accepting(m.next(s, l))) extendable[s] = true;
  }
  if (auto u = detail::union_uncovered(m, start, extendable)) return {false, *u};
  return {};
}

// ---------------------------------------------------------------------------
// Decision

enum class Verdict { Cellular, NotCellular, Undecided };
enum class Reason { None, EmptyOrEpsilonOnly, L1Failure, L2FailureAllLetters, MonoidCapExceeded };

/// Sample receptivity certificate: x a o^n b y is in L for every n.
struct CellularWitness {
  char letter = 0;
  Word x, a, b, y;
};

struct Decision {
  Verdict verdict = Verdict::Undecided;
  Reason reason = Reason::None;
  Dfa minimal;  // M(L), the automaton every certificate refers to
  std::optional<CellularWitness> witness{};
  std::optional<L1Report> l1{};
  std::vector<L2Report> l2{};  // in alphabet order; on Cellular, the last one passed
  std::size_t monoid_size = 0;
};

struct DecideOptions {
  std::size_t monoid_cap = kDefaultMonoidCap;
  unsigned jobs = 1;  // per-letter receptivity checks run concurrently when > 1
};

/// Shortlex-least nonempty word of L.
inline std::optional<Word> shortest_nonempty_word(const Dfa& m) {
  using Config = std::pair<State, bool>;  // (state, read at least one letter)
  return shortlex_search(
      m.alphabet(), Config{m.initial(), false},
      [&](const Config& c, Letter l) -> std::optional<Config> { return Config{m.next(c.first, l), true}; },
      [&](const Config& c) { return c.second && m.is_accepting(c.first); });
}

/// True iff L ⊆ {ε}.
inline bool empty_or_epsilon_only(const Dfa& m) { return !shortest_nonempty_word(m).has_value(); }

namespace detail {

/// The sample (x, y) reported with a Cellular verdict: x reaches the
/// highest-numbered accepting state, y is the shortlex-least nonempty word
/// of L (or ε).
inline WordPair sample_pair(const Dfa& m) {
  auto acc = m.accepting_states();
  return {access_word(m, acc.back()).value(), shortest_nonempty_word(m).value_or(Word{})};
}

}  // namespace detail

/// Decides cellularity of L(input). MonoidCapExceeded yields an Undecided
/// decision rather than a verdict.
inline Decision decide_cellularity(const Dfa& input, const DecideOptions& opts = {}) {
  Decision d{.minimal = minimize(input)};
  const Dfa& m = d.minimal;

  if (empty_or_epsilon_only(m)) {
    d.verdict = Verdict::NotCellular;
    d.reason = Reason::EmptyOrEpsilonOnly;
    return d;
  }

  d.l1 = check_L1(m);
  if (m.state_count() == 1) {
    // Γ*: every letter is receptive with empty joining words.
    d.verdict = Verdict::Cellular;
    d.monoid_size = 1;
    L2Report all;
    all.letter = m.alphabet().symbol(0);
    all.pass = true;
    all.o_path_count = 1;
    d.l2.push_back(all);
    d.witness = CellularWitness{m.alphabet().symbol(0), "", "", "", ""};
    return d;
  }
  if (!d.l1->pass) {
    d.verdict = Verdict::NotCellular;
    d.reason = Reason::L1Failure;
    return d;
  }

  TransitionMonoid monoid;
  try {
    monoid = transition_monoid(m, opts.monoid_cap);
  } catch (const MonoidCapExceeded&) {
    d.verdict = Verdict::Undecided;
    d.reason = Reason::MonoidCapExceeded;
    return d;
  }
  d.monoid_size = monoid.size();

  const std::size_t k = m.alphabet().size();
  if (opts.jobs > 1) {
    std::vector<std::future<L2Report>> pending;
    for (Letter o = 0; o < k; ++o)
      pending.push_back(std::async(std::launch::async, [&, o] { return check_L2_for(m, o, monoid); }));
    std::vector<L2Report> all;
    for (auto& f : pending) all.push_back(f.get());
    // Report exactly what the sequential loop would have.
    for (auto& r : all) {
      d.l2.push_back(r);
      if (r.pass) break;
    }
  } else {
    for (Letter o = 0; o < k; ++o) {
      d.l2.push_back(check_L2_for(m, o, monoid));
      if (d.l2.back().pass) break;
    }
  }

  if (!d.l2.back().pass) {
    d.verdict = Verdict::NotCellular;
    d.reason = Reason::L2FailureAllLetters;
    return d;
  }

  d.verdict = Verdict::Cellular;
  const Letter o = m.alphabet().index(d.l2.back().letter);
  auto [x, y] = detail::sample_pair(m);
  auto ab = receptive_witness(m, o, monoid, x, y).value();
  d.witness = CellularWitness{d.l2.back().letter, x, ab.first, ab.second, y};
  return d;
}

inline Decision decide_cellularity(const Nfa& input, const DecideOptions& opts = {}) {
  return decide_cellularity(determinize(input), opts);
}

inline Decision decide_cellularity(const Regex& input, const Alphabet& alphabet, const DecideOptions& opts = {}) {
  return decide_cellularity(ast_to_nfa(input, alphabet), opts);
}

// ---------------------------------------------------------------------------
// Certificate checks by membership runs only

using Membership = std::function<bool(std::string_view)>;

inline Word power(char c, std::size_t n) { return Word(n, c); }

/// x a o^n b y in L for n = 0 .. 2|Q|.
inline bool verify_cellular_witness(const CellularWitness& w, std::size_t state_count, const Membership& in_l) {
  if (!in_l(w.x) || !in_l(w.y)) return false;
  for (std::size_t n = 0; n <= 2 * state_count; ++n)
    if (!in_l(w.x + w.a + power(w.letter, n) + w.b + w.y)) return false;
  return true;
}

/// xy in L and (x not in L or y not in L).
inline bool verify_l1_counterexample(const WordPair& c, const Membership& in_l) {
  return in_l(c.first + c.second) && (!in_l(c.first) || !in_l(c.second));
}

/// x and y in L, q_ini.x = q, and y outside L(o,q) evaluated directly
/// from the family members.
inline bool verify_l2_counterexample(const Dfa& m, const L2Report& r, const TransitionMonoid& monoid,
                                     const Membership& in_l) {
  if (r.pass || !in_l(r.x) || !in_l(r.y) || m.run(r.x) != r.q) return false;
  try {
    auto lang = build_L_oq(m, m.alphabet().index(r.letter), r.q, monoid);
    return !lang.accepts(r.y) && !r.empty_family;
  } catch (const EmptyFamily&) {
    return r.empty_family;
  }
}

/// Re-checks every certificate carried by a decision.
inline bool verify_decision(const Decision& d, const Membership& in_l, std::size_t monoid_cap = kDefaultMonoidCap) {
  const Dfa& m = d.minimal;
  switch (d.verdict) {
    case Verdict::Undecided:
      return true;
    case Verdict::Cellular:
      return d.witness && verify_cellular_witness(*d.witness, m.state_count(), in_l);
    case Verdict::NotCellular:
      break;
  }
  switch (d.reason) {
    case Reason::EmptyOrEpsilonOnly:
      return empty_or_epsilon_only(m);
    case Reason::L1Failure:
      return d.l1 && d.l1->counterexample && verify_l1_counterexample(*d.l1->counterexample, in_l);
    case Reason::L2FailureAllLetters: {
      if (d.l2.size() != m.alphabet().size()) return false;
      auto monoid = transition_monoid(m, monoid_cap);
      return std::all_of(d.l2.begin(), d.l2.end(),
                         [&](const L2Report& r) { return verify_l2_counterexample(m, r, monoid, in_l); });
    }
    default:
      return false;
  }
}

}  // namespace cellang
