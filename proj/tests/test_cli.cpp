#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "cellang/cellang.hpp"

namespace {

struct Result {
  int status;
  std::string out;
};

Result cli(const std::string& args) {
  std::string cmd = std::string(CELLANG_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string data(const std::string& name) { return std::string(CELLANG_DATA_DIR) + "/" + name; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(CliDecide, CanonicalVerdicts) {
  auto all = cli("decide --regex '(a|b)*' --alphabet ab");
  EXPECT_EQ(all.status, 0);
  EXPECT_EQ(first_line(all.out), "CELLULAR o=a");

  auto astar = cli("decide --regex 'a*|b*' --alphabet ab --format machine");
  EXPECT_EQ(astar.status, 1);
  EXPECT_EQ(astar.out,
            "NOT-CELLULAR reason=L2\n"
            "L2 FAIL o=a q=0 x=_ y=b\n"
            "L2 FAIL o=b q=0 x=_ y=a\n");

  auto ab = cli("decide --regex '(ab)*' --alphabet ab");
  EXPECT_EQ(ab.status, 1);
  EXPECT_EQ(first_line(ab.out), "NOT-CELLULAR reason=L1 x=a y=b");

  auto eps = cli("decide --regex _ --alphabet ab");
  EXPECT_EQ(eps.status, 1);
  EXPECT_EQ(first_line(eps.out), "NOT-CELLULAR reason=empty-or-epsilon");

  auto nobb = cli("decide --file " + data("nobb.aut") + " --format machine");
  EXPECT_EQ(nobb.status, 0);
  EXPECT_EQ(first_line(nobb.out), "CELLULAR o=a");
  EXPECT_NE(nobb.out.find("states=3 monoid=6"), std::string::npos);
}

TEST(CliDecide, PartialAutomatonFileAndJobs) {
  auto r = cli("decide --file " + data("ab_star.aut") + " --jobs 2");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(first_line(r.out), "NOT-CELLULAR reason=L1 x=a y=b");
}

TEST(CliDecide, CapAndErrors) {
  auto capped = cli("decide --file " + data("nobb.aut") + " --monoid-cap 3");
  EXPECT_EQ(capped.status, 2);
  EXPECT_EQ(first_line(capped.out), "UNDECIDED cap-exceeded");

  EXPECT_EQ(cli("decide --regex 'a(' --alphabet ab").status, 2);
  EXPECT_EQ(cli("decide --regex 'a'").status, 2);
  EXPECT_EQ(cli("decide --regex a --alphabet ab --file x").status, 2);
  EXPECT_EQ(cli("decide --file /nonexistent.aut").status, 2);
  EXPECT_EQ(cli("decide --bogus").status, 2);
  EXPECT_EQ(cli("").status, 2);
}

TEST(CliDecide, AlphabetOverrideKeepsVerdict) {
  auto r = cli("decide --file " + data("nobb.aut") + " --alphabet abc");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(first_line(r.out), "CELLULAR o=a");
}

TEST(CliChecks, L1AndL2) {
  auto l1 = cli("l1 --file " + data("nobb.aut"));
  EXPECT_EQ(l1.status, 0);
  EXPECT_EQ(l1.out, "L1 PASS\n");

  auto l2b = cli("l2 --file " + data("nobb.aut") + " --letter b");
  EXPECT_EQ(l2b.status, 1);
  EXPECT_EQ(l2b.out, "L2 FAIL o=b (no o-paths)\n");

  auto l2a = cli("l2 --file " + data("nobb.aut") + " --letter a");
  EXPECT_EQ(l2a.status, 0);
  EXPECT_EQ(l2a.out, "L2 PASS o=a\n");

  auto both = cli("l2 --file " + data("nobb.aut"));
  EXPECT_EQ(both.status, 0);
  EXPECT_EQ(both.out, "L2 PASS o=a\nL2 FAIL o=b (no o-paths)\n");

  EXPECT_EQ(cli("l1 --regex '(ab)*' --alphabet ab").out, "L1 FAIL x=a y=b\n");
  EXPECT_EQ(cli("l2 --regex '(ab)*' --alphabet ab").status, 1);
  EXPECT_EQ(cli("l2 --file " + data("nobb.aut") + " --letter c").status, 2);
}

TEST(CliCaLang, Elementary) {
  auto id = cli("ca-lang --elementary 204");
  EXPECT_EQ(id.status, 0);
  EXPECT_EQ(id.out, "alphabet 0 1\nstates 1\ninitial 0\naccepting 0\ntrans 0 0 0\ntrans 0 1 0\n");

  auto zero = cli("ca-lang --elementary 0");
  EXPECT_EQ(zero.out, "alphabet 0 1\nstates 2\ninitial 0\naccepting 0\ntrans 0 0 0\ntrans 0 1 1\ntrans 1 0 1\ntrans 1 1 1\n");

  auto maj = cli("ca-lang --rule-file " + data("maj.rule"));
  EXPECT_EQ(maj.status, 0);
  auto parsed = cellang::parse_automaton_file(maj.out);
  EXPECT_EQ(cellang::serialize_automaton(parsed), maj.out);
  EXPECT_EQ(*cellang::as_dfa(parsed), cellang::ca_language_dfa(cellang::LocalRule::elementary(232)));

  EXPECT_EQ(cli("ca-lang --elementary 300").status, 2);
  EXPECT_EQ(cli("ca-lang").status, 2);
}

TEST(CliOracle, AgreementAndSeededFault) {
  auto nobb = cli("oracle-compare --file " + data("nobb.aut") + " --maxlen 8 --maxwit 3");
  EXPECT_EQ(nobb.status, 0);
  EXPECT_EQ(nobb.out,
            "PASS\nORACLE language PASS\nORACLE l1 PASS\nORACLE l2 o=a PASS\nORACLE l2 o=b PASS\n");

  auto r90 = cli("oracle-compare --elementary 90 --maxlen 8");
  EXPECT_EQ(r90.status, 0);
  EXPECT_EQ(first_line(r90.out), "PASS");
  EXPECT_NE(r90.out.find("ORACLE blocks PASS"), std::string::npos);

  auto bad = cli("oracle-compare --elementary 90 --file " + data("rule90_corrupted.aut") + " --maxlen 8");
  EXPECT_EQ(bad.status, 1);
  EXPECT_EQ(bad.out, "FAIL\nORACLE blocks FAIL word=11\n");
}

TEST(CliMonoid, NoBb) {
  auto r = cli("monoid --file " + data("nobb.aut") + " --format machine");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "MONOID size=6 states=3\ngenerator letter=a map=0,0,2\ngenerator letter=b map=1,2,2\n");
}

TEST(CliOutput, StableAcrossRuns) {
  for (const char* args : {"decide --regex 'a*|b*' --alphabet ab", "decide --file " CELLANG_DATA_DIR "/nobb.aut"})
    EXPECT_EQ(cli(args).out, cli(args).out);
}
