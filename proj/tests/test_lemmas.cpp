#include <doctest.h>

#include "oracle.hpp"
#include "tagforge/error.hpp"
#include "tagforge/lemmas.hpp"

using namespace tagforge;

namespace {

Formula F(const char* text) { return parse_formula(text); }

TagSystem collatz() { return parse_tag_system("d=2\na -> bc\nb -> a\nc -> aaa"); }
TagSystem halting() { return parse_tag_system("d=2\na -> b\nb -> b"); }
TagSystem growing() { return parse_tag_system("d=2\na -> aa"); }

Calculus p0_of(std::initializer_list<const char*> axioms) {
  Calculus c{"P0", {}, {}};
  for (const char* a : axioms) c.add(F(a));
  return c;
}

void check_passes(const LemmaReport& r) {
  CAPTURE(r.id);
  CAPTURE(r.detail);
  CHECK(r.verdict == LemmaVerdict::kPass);
  CHECK(revalidate(r));
}

}  // namespace

TEST_CASE("verdict names and first_letters") {
  CHECK(to_string(LemmaVerdict::kPass) == "pass");
  CHECK(to_string(LemmaVerdict::kFail) == "fail");
  CHECK(to_string(LemmaVerdict::kInconclusiveBudget) == "inconclusive-budget");
  CHECK(first_letters(3) == "abc");
  CHECK(first_letters(26).back() == 'z');
  CHECK_THROWS_AS(first_letters(0), PreconditionError);
  CHECK_THROWS_AS(first_letters(27), PreconditionError);
}

TEST_CASE("non-unifiability of x o y with (x o y) -> z") {
  for (const HatTemplate& h : default_hat_candidates(4)) check_passes(check_lemma1(h));
}

TEST_CASE("find_unifiable_pair") {
  std::size_t checked = 0;
  auto hit = find_unifiable_pair({F("x -> x"), F("(a -> b) -> c"), F("y -> y -> y")}, &checked);
  REQUIRE(hit.has_value());
  CHECK(*hit == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(checked == 1);
  CHECK_FALSE(find_unifiable_pair({F("x -> x"), F("x -> x")}).has_value());
  CHECK_FALSE(find_unifiable_pair({F("(x -> x) -> x"), F("a -> b -> a")}).has_value());
  CHECK_FALSE(find_unifiable_pair({}).has_value());
}

TEST_CASE("alphabetic formulas are pairwise non-unifiable") {
  const LemmaReport r = check_lemma3(HatTemplate(), 2, 4);
  check_passes(r);
  // Pairs checked: n(n-1)/2 for the 2 + 4 + 16 + 80 alphabetic formulas.
  CHECK(r.resources.checks == 102 * 101 / 2);
  check_passes(check_lemma3(HatTemplate::parse("x -> x"), 3, 3));
}

TEST_CASE("codes of distinct words are non-unifiable") {
  check_passes(check_corollary4(HatTemplate(), 2, 4));
  check_passes(check_corollary4(HatTemplate::parse("x -> x"), 3, 3));
}

TEST_CASE("code members are derivable from weakening alone") {
  const LemmaReport r = check_code_derivability(HatTemplate(), 3, 3);
  check_passes(r);
  CHECK(r.traces.size() == 3 + 9 + 27 * 2);
  for (const TraceWitness& w : r.traces) CHECK(w.trace.steps.size() == 1);
  check_passes(check_code_derivability(HatTemplate::parse("x -> x -> x"), 2, 4));
}

TEST_CASE("P_T is included in the weakening calculus") {
  const LemmaReport r = check_inclusion(collatz(), HatTemplate());
  check_passes(r);
  CHECK(r.traces.size() == 28);
  CHECK(r.calculus.axioms.size() == 1);
  check_passes(check_inclusion(halting(), HatTemplate::parse("x -> x")));

  Calculus corrupted = build_PT(collatz(), HatTemplate());
  corrupted.add(F("x -> x"), "R");
  const LemmaReport bad = check_inclusion(corrupted);
  CHECK(bad.verdict == LemmaVerdict::kFail);
  REQUIRE(bad.counterexample.has_value());
  CHECK(alpha_equal(*bad.counterexample, F("x -> x")));
}

TEST_CASE("revalidate rejects corrupted evidence") {
  LemmaReport r = check_inclusion(collatz(), HatTemplate());
  REQUIRE(revalidate(r));
  r.traces[3].claimed = F("x -> x");
  CHECK_FALSE(revalidate(r));

  LemmaReport c = check_lemma7(collatz(), HatTemplate(), "aaa");
  REQUIRE(revalidate(c));
  c.chains[0].waypoints.back() = F("q");
  CHECK_FALSE(revalidate(c));
}

TEST_CASE("rebracketing chains reach every member of the code") {
  const HatTemplate h;
  const WordCodec codec(h, "abc");
  for (const Word& w : {"a", "ab", "abc", "acca", "abcab"}) {
    const WordCode code = codec.code_word(w);
    for (const AlphabeticFormula& from : code.members) {
      const std::vector<ChainProof> chains = build_chain_lemma6(h, "abc", from);
      REQUIRE(chains.size() == code.members.size());
      for (std::size_t i = 0; i < chains.size(); ++i) {
        CHECK(chains[i].start() == from.formula);
        CHECK(chains[i].end() == code.members[i].formula);
        CHECK(chain_check(transformation_rules(h), chains[i]));
        for (const Formula& wp : chains[i].waypoints) CHECK(codec.decode(wp)->word == w);
      }
    }
  }
  const LemmaReport r = check_lemma6(h, 2, 4);
  check_passes(r);
  // One chain per ordered pair of bracketings of each word.
  CHECK(r.chains.size() == 2 * 1 + 4 * 1 + 8 * 4 + 16 * 25);
}

TEST_CASE("single production chains") {
  const TagSystem t = collatz();
  const HatTemplate h;
  const WordCodec codec(h, t.alphabet());
  for (const Word& xi : {"aa", "ab", "aaa", "abc", "cbc", "caaa", "bcaaaa"}) {
    CAPTURE(xi);
    const ChainProof chain = build_chain_lemma7(t, h, xi);
    CHECK(chain.start() == codec.right_comb(xi).formula);
    CHECK(chain.end() == codec.right_comb(*tag_step(t, xi)).formula);
    CHECK(chain_check(build_PT(t, h), chain));
    check_passes(check_lemma7(t, h, xi));
  }
  // With nothing after the deleted prefix the chain is one T2 step.
  CHECK(build_chain_lemma7(t, h, "ab").length() == 1);
  CHECK_THROWS_AS(build_chain_lemma7(t, h, "a"), PreconditionError);
}

TEST_CASE("run chain follows the whole Collatz run") {
  const TagSystem t = collatz();
  const LemmaReport r = check_corollary5(t, HatTemplate(), "aaa", 100);
  check_passes(r);
  REQUIRE(r.chains.size() == 1);
  CHECK(r.chains[0].end() == WordCodec(HatTemplate(), "abc").right_comb("a").formula);
  // A truncated run ends where the machine stood.
  const ChainProof partial = build_run_chain(t, HatTemplate(), "aaa", 3);
  CHECK(partial.end() == WordCodec(HatTemplate(), "abc").right_comb("caaa").formula);
  CHECK(build_run_chain(t, HatTemplate(), "a", 5).length() == 0);
}

TEST_CASE("bounded chain search finds only produced words") {
  const LemmaReport r = check_corollary6(halting(), HatTemplate());
  check_passes(r);
  CHECK_FALSE(r.chains.empty());
  Corollary6Options small;
  small.max_word_length = 3;
  check_passes(check_corollary6(collatz(), HatTemplate(), small));
}

TEST_CASE("closure classification passes on P_T plus a code") {
  const TagSystem t = collatz();
  const HatTemplate h;
  const LemmaReport r = check_production(t, p0_of({"q -> q"}), h, "aaa", 3);
  CHECK(r.id == "lemma9+10");
  CHECK(r.verdict == LemmaVerdict::kPass);
  CHECK(r.resources.checks > 0);
  CHECK(check_production(halting(), p0_of({"q -> q"}), h, "aa", 3).verdict == LemmaVerdict::kPass);
}

TEST_CASE("an injected axiom is reported as a counterexample") {
  const TagSystem t = collatz();
  const HatTemplate h;
  Calculus mutated = build_PT(t, h);
  const std::vector<Formula> reference = mutated.axioms;
  for (const AlphabeticFormula& m : WordCodec(h, t.alphabet()).code_word("aaa").members) mutated.add(m.formula, "input");
  mutated.add(F("x -> x"), "T1");
  const LemmaReport r = classify_closure("mutated", mutated, reference, t, h, "aaa", 1);
  CHECK(r.verdict == LemmaVerdict::kFail);
  REQUIRE(r.counterexample.has_value());
  CHECK(alpha_equal(*r.counterexample, F("x -> x")));
}

TEST_CASE("classify_closure reports budget exhaustion as inconclusive") {
  const TagSystem t = collatz();
  Calculus c = build_PT(t, HatTemplate());
  for (const AlphabeticFormula& m : WordCodec(HatTemplate(), t.alphabet()).code_word("aaa").members) c.add(m.formula);
  ClosureOptions tiny;
  tiny.generator_cap = 5;
  const LemmaReport r = classify_closure("capped", c, c.axioms, t, HatTemplate(), "aaa", 2, std::nullopt, tiny);
  CHECK(r.verdict == LemmaVerdict::kInconclusiveBudget);
}

TEST_CASE("compute_N") {
  const Calculus p0 = p0_of({"q -> q"});
  const auto halts = compute_N(build_reduction(halting(), p0, "aa"), 4);
  REQUIRE(halts.has_value());
  CHECK(*halts <= 2);
  CHECK(compute_N(build_reduction(halting(), p0, "a"), 4) == std::optional<std::size_t>{0});
  CHECK_FALSE(compute_N(build_reduction(growing(), p0, "aa"), 4).has_value());
  CHECK_FALSE(compute_N(build_reduction(parse_tag_system("d=1\na -> a"), p0, "a"), 4).has_value());
}

TEST_CASE("halting equivalence: a halting run derives P0") {
  const Calculus p0 = p0_of({"q -> q", "r -> s -> r"});
  const LemmaReport r = check_halting_equivalence(halting(), p0, "aa", 4);
  check_passes(r);
  REQUIRE(r.traces.size() == 2);
  CHECK(alpha_equal(r.traces[0].claimed, F("q -> q")));
}

TEST_CASE("halting equivalence: a non-halting run stays inconclusive") {
  const LemmaReport r = check_halting_equivalence(growing(), p0_of({"q -> q"}), "aa", 4);
  CHECK(r.verdict == LemmaVerdict::kInconclusiveBudget);
  CHECK_FALSE(r.counterexample.has_value());
  CHECK(r.traces.empty());
}

TEST_CASE("halting equivalence preconditions") {
  CHECK_THROWS_AS(check_halting_equivalence(halting(), Calculus{"P0", {}, {}}, "aa", 3), PreconditionError);
  CHECK_THROWS_AS(check_halting_equivalence(parse_tag_system("d=1\na -> a"), p0_of({"q -> q"}), "a", 3),
                  PreconditionError);
  CHECK_THROWS_AS(check_halting_equivalence(halting(), p0_of({"q -> q"}), "", 3), PreconditionError);
}

TEST_CASE("halting equivalence: budget exhaustion is inconclusive") {
  ClosureOptions tiny;
  tiny.generator_cap = 3;
  const LemmaReport r = check_halting_equivalence(halting(), p0_of({"q -> q"}), "aa", 4, tiny);
  CHECK(r.verdict == LemmaVerdict::kInconclusiveBudget);
}
