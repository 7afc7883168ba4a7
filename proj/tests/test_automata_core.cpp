#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cellang/cellang.hpp"
#include "test_support.hpp"

using namespace cellang;
using namespace cellang::testing;

TEST(Alphabet, RejectsReservedAndDuplicateLetters) {
  EXPECT_THROW(Alphabet(""), InvalidAlphabet);
  EXPECT_THROW(Alphabet("aa"), InvalidAlphabet);
  EXPECT_THROW(Alphabet("a#"), InvalidAlphabet);
  EXPECT_THROW(Alphabet("a_"), InvalidAlphabet);
  EXPECT_THROW(Alphabet("a|"), InvalidAlphabet);
  Alphabet ab("a b");
  EXPECT_EQ(ab.size(), 2u);
  EXPECT_EQ(ab.index('b'), 1u);
  EXPECT_THROW(ab.index('c'), UnknownLetter);
}

TEST(Determinize, SingleLetterLanguage) {
  Nfa n(Alphabet("a"), 2);
  n.add_initial(0);
  n.add_transition(0, 0, 1);
  n.set_accepting(1);
  Dfa d = determinize(n);
  EXPECT_EQ(d.state_count(), 3u);
  EXPECT_TRUE(d.is_complete());
  EXPECT_FALSE(d.accepts(""));
  EXPECT_TRUE(d.accepts("a"));
  EXPECT_FALSE(d.accepts("aa"));
}

TEST(Determinize, AgreesWithDirectSimulation) {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    Alphabet al(iter % 2 ? "ab" : "abc");
    std::uniform_int_distribution<State> states(1, 5);
    std::size_t n_states = states(rng);
    Nfa n(al, n_states);
    std::uniform_int_distribution<State> pick(0, static_cast<State>(n_states - 1));
    std::bernoulli_distribution coin(0.35);
    for (State s = 0; s < n_states; ++s) {
      if (coin(rng)) n.add_initial(s);
      n.set_accepting(s, coin(rng));
      for (Letter l = 0; l < al.size(); ++l)
        for (State t = 0; t < n_states; ++t)
          if (coin(rng)) n.add_transition(s, l, t);
    }
    Dfa m = minimize(determinize(n));
    auto bad = first_disagreement(al, 8, [&](const Word& w) { return n.accepts(w); },
                                  [&](const Word& w) { return m.accepts(w); });
    EXPECT_FALSE(bad.has_value()) << "iteration " << iter << " word " << *bad;
  }
}

TEST(Complete, AddsOneSink) {
  Dfa partial(Alphabet("ab"), 1, 0);
  partial.set_accepting(0);
  partial.set_transition(0, 0, 0);
  Dfa c = complete(partial);
  EXPECT_EQ(c.state_count(), 2u);
  EXPECT_TRUE(c.is_complete());
  EXPECT_TRUE(c.accepts("aaa"));
  EXPECT_FALSE(c.accepts("ab"));
  EXPECT_EQ(c.sink(), State{1});

  Dfa full = no_bb_dfa();
  EXPECT_EQ(complete(full), full);
}

TEST(Minimize, NoBbFromRedundantAcceptor) {
  // 4 states: the "after a" state is split in two copies.
  Dfa d(Alphabet("ab"), 4, 0);
  for (State s : {0u, 1u, 3u}) d.set_accepting(s);
  d.set_transition(0, 0, 3);
  d.set_transition(0, 1, 1);
  d.set_transition(1, 0, 0);
  d.set_transition(1, 1, 2);
  d.set_transition(2, 0, 2);
  d.set_transition(2, 1, 2);
  d.set_transition(3, 0, 0);
  d.set_transition(3, 1, 1);
  Dfa m = minimize(d);
  EXPECT_EQ(m.state_count(), 3u);
  EXPECT_EQ(m, no_bb_dfa());
}

TEST(Minimize, UniversalLanguageHasOneState) {
  Dfa m = from_regex("(a|b)*(a|b)*", "ab");
  EXPECT_EQ(m.state_count(), 1u);
  EXPECT_TRUE(m.is_accepting(0));
}

TEST(Minimize, IdempotentAndCanonical) {
  std::mt19937 rng(11);
  Alphabet al("ab");
  for (int i = 0; i < 100; ++i) {
    Dfa d = random_dfa(rng, 6, al);
    Dfa m = minimize(d);
    EXPECT_EQ(minimize(m), m);
    // Canonical form: renaming states of the input does not change the output.
    std::vector<State> perm(d.state_count());
    for (State s = 0; s < perm.size(); ++s) perm[s] = s;
    std::shuffle(perm.begin(), perm.end(), rng);
    Dfa p(al, d.state_count(), perm[d.initial()]);
    for (State s = 0; s < d.state_count(); ++s) {
      p.set_accepting(perm[s], d.is_accepting(s));
      for (Letter l = 0; l < al.size(); ++l) p.set_transition(perm[s], l, perm[d.next(s, l)]);
    }
    EXPECT_EQ(minimize(p), m);
  }
}

TEST(Minimize, NoTwoStatesShareARightLanguage) {
  std::mt19937 rng(5);
  Alphabet al("ab");
  for (int i = 0; i < 50; ++i) {
    Dfa m = minimize(random_dfa(rng, 5, al));
    for (State p = 0; p < m.state_count(); ++p)
      for (State q = p + 1; q < m.state_count(); ++q)
        EXPECT_FALSE(equivalent(left_language_from(m, p), left_language_from(m, q)));
  }
}

TEST(IsSubset, ShortestCounterexample) {
  Dfa a_star = from_regex("a*", "ab");
  Dfa all = from_regex("(a|b)*", "ab");
  EXPECT_FALSE(is_subset(a_star, all).has_value());
  EXPECT_EQ(is_subset(all, a_star), Word("b"));
  Dfa m = no_bb_dfa();
  EXPECT_FALSE(is_subset(left_language_from(m, 1), m).has_value());
}

TEST(IsSubset, AgreesWithBoundedEnumeration) {
  std::mt19937 rng(3);
  Alphabet al("ab");
  for (int i = 0; i < 200; ++i) {
    Dfa a = random_dfa(rng, 4, al), b = random_dfa(rng, 4, al);
    std::optional<Word> brute;
    for_each_word(al, a.state_count() * b.state_count(), [&](const Word& w) {
      if (a.accepts(w) && !b.accepts(w)) {
        brute = w;
        return false;
      }
      return true;
    });
    EXPECT_EQ(is_subset(a, b), brute);
  }
}

TEST(IsEmpty, Witnesses) {
  Dfa none(Alphabet("ab"), 1, 0);
  for (Letter l = 0; l < 2; ++l) none.set_transition(0, l, 0);
  EXPECT_FALSE(is_empty(none).has_value());
  EXPECT_EQ(is_empty(from_regex("(ab)*", "ab")), Word(""));
  EXPECT_EQ(is_empty(intersect(no_bb_dfa(), complement(from_regex("a*", "ab")))), Word("b"));
  EXPECT_EQ(is_empty(regex_to_nfa("bb*a|ab", Alphabet("ab"))), Word("ab"));
  EXPECT_FALSE(is_empty(Nfa(Alphabet("a"), 2)).has_value());
}

TEST(LeftLanguage, FromStatesOfNoBb) {
  Dfa m = no_bb_dfa();
  EXPECT_EQ(left_language_from(m, 0), m);
  Dfa l1 = left_language_from(m, 1);
  for (const auto& w : words_up_to(Alphabet("ab"), 5)) {
    bool expected = w.find("bb") == Word::npos && (w.empty() || w[0] != 'b');
    EXPECT_EQ(l1.accepts(w), expected) << w;
  }
  EXPECT_FALSE(is_empty(left_language_from(m, 2)).has_value());
}

TEST(Run, RightAction) {
  Dfa m = no_bb_dfa();
  EXPECT_EQ(run(m, 0, "ab"), 1u);
  EXPECT_EQ(run(m, 1, ""), 1u);
  EXPECT_EQ(run(m, 2, "abba"), 2u);
  EXPECT_EQ(run(m, 0, "abab"), run(m, run(m, 0, "ab"), "ab"));
  EXPECT_THROW(run(m, 0, "abc"), UnknownLetter);
}

TEST(TransitionMonoid, NoBbHasSixActions) {
  Dfa m = no_bb_dfa();
  auto monoid = transition_monoid(m);
  ASSERT_EQ(monoid.size(), 6u);
  std::set<Word> words;
  for (const auto& e : monoid) words.insert(e.word);
  EXPECT_EQ(words, (std::set<Word>{"", "a", "b", "ab", "ba", "bb"}));
  EXPECT_EQ(monoid[1].action.mapping(), (std::vector<State>{0, 0, 2}));
  EXPECT_EQ(monoid[*monoid.find(StateAction::of_word(m, "bb"))].word, "bb");
  EXPECT_EQ(StateAction::of_word(m, "bb").mapping(), (std::vector<State>{2, 2, 2}));
}

TEST(TransitionMonoid, UniversalLanguageIsTrivial) {
  auto monoid = transition_monoid(from_regex("(a|b)*", "ab"));
  EXPECT_EQ(monoid.size(), 1u);
  EXPECT_EQ(monoid[0].word, "");
}

TEST(TransitionMonoid, ClosedBoundedAndRepresentativesCorrect) {
  std::mt19937 rng(21);
  Alphabet al("ab");
  for (int i = 0; i < 100; ++i) {
    Dfa m = minimize(random_dfa(rng, 5, al));
    auto monoid = transition_monoid(m);
    std::size_t bound = 1;
    for (std::size_t j = 0; j < m.state_count(); ++j) bound *= m.state_count();
    EXPECT_LE(monoid.size(), bound);
    for (const auto& e : monoid) {
      EXPECT_EQ(StateAction::of_word(m, e.word), e.action);
      for (Letter l = 0; l < al.size(); ++l)
        EXPECT_TRUE(monoid.find(e.action.then(StateAction::of_letter(m, l))).has_value());
    }
  }
}

TEST(TransitionMonoid, CapExceeded) {
  EXPECT_THROW(transition_monoid(no_bb_dfa(), 5), MonoidCapExceeded);
  EXPECT_EQ(transition_monoid(no_bb_dfa(), 6).size(), 6u);
}

TEST(StateAction, CompositionMatchesConcatenation) {
  Dfa m = no_bb_dfa();
  for (const auto& u : words_up_to(m.alphabet(), 3))
    for (const auto& v : words_up_to(m.alphabet(), 3))
      EXPECT_EQ(StateAction::of_word(m, u).then(StateAction::of_word(m, v)), StateAction::of_word(m, u + v));
}
