#include <doctest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "tagforge/error.hpp"
#include "tagforge/formula.hpp"

using namespace tagforge;

namespace {

Formula F(const char* text) { return parse_formula(text); }
Formula V(const char* name) { return Formula::var(name); }

}  // namespace

TEST_CASE("parse: grammar examples") {
  const Formula k = Formula::imp(V("x"), Formula::imp(V("y"), V("x")));
  CHECK(F("x -> (y -> x)") == k);
  CHECK(F("x -> y -> x") == k);
  CHECK(F("(x -> y) -> x") == Formula::imp(Formula::imp(V("x"), V("y")), V("x")));
  CHECK(F("  ((p))  ") == V("p"));
  CHECK(F("v1_a->w2") == Formula::imp(V("v1_a"), V("w2")));
}

TEST_CASE("parse: malformed input reports a position") {
  for (const char* bad : {"", "x ->", "(x -> y", "x y", "X", "1x", "x -> -> y", ")", "x - y"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(F(bad), ParseError);
  }
  try {
    F("x -> (y -> ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 11);
  }
}

TEST_CASE("render: minimal parentheses") {
  CHECK(render_formula(F("x -> (y -> x)")) == "x -> y -> x");
  CHECK(render_formula(F("(x -> y) -> x")) == "(x -> y) -> x");
  CHECK(render_formula(V("p")) == "p");
  CHECK(render_formula(F("((a -> b) -> c) -> d")) == "((a -> b) -> c) -> d");
}

TEST_CASE("round trip: parse(render(f)) == f on random formulas up to depth 12") {
  std::mt19937 rng(7);
  const std::vector<std::string> names{"x", "y", "z", "p", "v12"};
  for (int i = 0; i < 300; ++i) {
    auto t = oracle::random_tree(rng, 12, names);
    Formula f = oracle::to_formula(t);
    CHECK(parse_formula(render_formula(f)) == f);
    CHECK(parse_formula(oracle::text(t)) == f);
  }
}

TEST_CASE("formulas are hash-consed") {
  CHECK(F("x -> y") == Formula::imp(V("x"), V("y")));
  CHECK(F("x -> y").node() == F("(x) -> (y)").node());
  CHECK_FALSE(F("x -> y") == F("y -> x"));
  CHECK(F("x -> y").hash() == F("x->y").hash());
}

TEST_CASE("size, height and saturation on shared DAGs") {
  CHECK(F("x -> y -> x").size() == 5);
  CHECK(V("x").height() == 0);
  CHECK(F("x -> y -> x").height() == 2);
  Formula f = V("x");
  for (int i = 0; i < 100; ++i) f = Formula::imp(f, f);
  CHECK(f.height() == 100);
  CHECK(f.size() == UINT64_MAX);
  CHECK_THROWS_AS(render_formula(f), Error);
  // Memoized traversals stay fast on the 2^100-leaf tree.
  CHECK(variables(f) == std::vector<Formula>{V("x")});
  Substitution s;
  s.bind("x", V("y"));
  CHECK(variables(apply_substitution(s, f)) == std::vector<Formula>{V("y")});
}

TEST_CASE("variables in first-occurrence order") {
  CHECK(variables(F("(z -> x) -> y -> z")) == std::vector<Formula>{V("z"), V("x"), V("y")});
  CHECK(contains_var(F("a -> b"), V("b")));
  CHECK_FALSE(contains_var(F("a -> b"), V("c")));
}

TEST_CASE("chain builds right-nested implications") {
  CHECK(chain({V("a"), V("b"), V("c")}) == F("a -> b -> c"));
  CHECK(chain({V("a")}) == V("a"));
}

TEST_CASE("structural_compare: size first, total and consistent with equality") {
  CHECK(structural_compare(V("z"), F("a -> a")) < 0);
  std::mt19937 rng(3);
  std::vector<Formula> fs;
  for (int i = 0; i < 60; ++i) fs.push_back(oracle::to_formula(oracle::random_tree(rng, 4, {"x", "y"})));
  for (const Formula& a : fs) {
    for (const Formula& b : fs) {
      auto ab = structural_compare(a, b);
      CHECK((ab == 0) == (a == b));
      CHECK((ab < 0) == (structural_compare(b, a) > 0));
      if (a.size() < b.size()) CHECK(ab < 0);
    }
  }
}

TEST_CASE("apply_substitution examples") {
  Substitution s;
  s.bind("x", F("y -> y"));
  CHECK(apply_substitution(s, F("x -> x")) == F("(y -> y) -> y -> y"));
  CHECK(apply_substitution(Substitution{}, F("a -> b -> c")) == F("a -> b -> c"));
  Substitution swap;
  swap.bind("x", V("y"));
  swap.bind("y", V("x"));
  CHECK(apply_substitution(swap, F("x -> y")) == F("y -> x"));
}

TEST_CASE("substitution drops identity bindings and keeps names sorted") {
  Substitution s;
  s.bind("y", V("y"));
  CHECK(s.empty());
  s.bind("z", V("a"));
  s.bind("b", V("c"));
  CHECK(s.size() == 2);
  CHECK(s.bindings().begin()->first == "b");
  CHECK(s.lookup(V("z")) == V("a"));
  CHECK_FALSE(s.lookup(V("q")).has_value());
}

TEST_CASE("compose applies inner then outer") {
  Substitution inner;
  inner.bind("x", F("y -> z"));
  Substitution outer;
  outer.bind("y", V("w"));
  outer.bind("x", V("q"));
  Substitution c = compose(outer, inner);
  const Formula f = F("x -> y -> x");
  CHECK(apply_substitution(c, f) == apply_substitution(outer, apply_substitution(inner, f)));
}

TEST_CASE("unify examples") {
  CHECK(unify(F("x -> y -> z"), F("(y -> z) -> x")).has_value());
  CHECK_FALSE(unify(F("x -> y -> x"), F("(y -> x) -> x")).has_value());
  CHECK_FALSE(unify(V("x"), F("x -> y")).has_value());
  CHECK(unify(V("x"), V("x"))->empty());
}

TEST_CASE("unify agrees with a Robinson oracle; MGU is sound, idempotent and most general") {
  std::mt19937 rng(11);
  const std::vector<std::string> names{"x", "y", "z", "u"};
  int unifiable = 0;
  for (int i = 0; i < 1500; ++i) {
    auto ta = oracle::random_tree(rng, 4, names);
    auto tb = oracle::random_tree(rng, 4, names);
    const Formula a = oracle::to_formula(ta);
    const Formula b = oracle::to_formula(tb);
    auto mgu = unify(a, b);
    auto expected = oracle::unify(ta, tb);
    REQUIRE(mgu.has_value() == expected.has_value());
    if (!mgu) continue;
    ++unifiable;
    const Formula ua = apply_substitution(*mgu, a);
    CHECK(ua == apply_substitution(*mgu, b));
    CHECK(apply_substitution(*mgu, ua) == ua);
    // The oracle's unifier factors through ours: its image is an instance.
    const Formula oa = oracle::to_formula(oracle::apply(*expected, ta));
    CHECK(match_instance(oa, ua).has_value());
    // So does a ground specialization of it.
    oracle::Subst ground;
    for (const auto& n : names) ground[n] = oracle::imp(oracle::var("p"), oracle::var("p"));
    const Formula ga = oracle::to_formula(oracle::apply(ground, oracle::apply(*expected, ta)));
    CHECK(match_instance(ga, ua).has_value());
    // Both unifiers are most general, so their images are alpha-equal.
    CHECK(alpha_equal(oa, ua));
  }
  CHECK(unifiable > 100);
}

TEST_CASE("unify_apart renames the second formula") {
  auto u = unify_apart(F("x -> x"), F("x -> y"));
  REQUIRE(u.has_value());
  CHECK(apply_substitution(u->mgu, F("x -> x")) ==
        apply_substitution(u->mgu, apply_substitution(u->renaming, F("x -> y"))));
  CHECK_FALSE(unify(V("x"), F("x -> y")).has_value());
  CHECK(unify_apart(V("x"), F("x -> y")).has_value());
}

TEST_CASE("match_instance examples") {
  auto s = match_instance(F("(a -> a) -> b -> a -> a"), F("x -> y -> x"));
  REQUIRE(s.has_value());
  CHECK(s->lookup(V("x")) == F("a -> a"));
  CHECK(s->lookup(V("y")) == V("b"));
  CHECK_FALSE(match_instance(F("x -> y -> x"), F("x -> y -> y")).has_value());
  auto self = match_instance(F("x -> y -> x"), F("x -> y -> x"));
  REQUIRE(self.has_value());
  CHECK(self->empty());
}

TEST_CASE("match_instance agrees with the oracle and implies apart-unifiability") {
  std::mt19937 rng(5);
  int matched = 0;
  for (int i = 0; i < 1500; ++i) {
    auto pattern = oracle::random_tree(rng, 3, {"x", "y"});
    auto candidate = oracle::random_tree(rng, 5, {"x", "y", "p"});
    const Formula pf = oracle::to_formula(pattern);
    const Formula cf = oracle::to_formula(candidate);
    auto s = match_instance(cf, pf);
    REQUIRE(s.has_value() == oracle::is_instance(candidate, pattern));
    if (!s) continue;
    ++matched;
    CHECK(apply_substitution(*s, pf) == cf);
    for (const auto& [name, value] : s->bindings()) CHECK(contains_var(pf, Formula::var(name)));
    CHECK(unify_apart(cf, pf).has_value());
  }
  CHECK(matched > 50);
}

TEST_CASE("alpha_equal examples and canonical forms") {
  CHECK(alpha_equal(F("x -> y"), F("u -> v")));
  CHECK_FALSE(alpha_equal(F("x -> x"), F("x -> y")));
  CHECK(alpha_equal(F("x -> y"), F("y -> x")));
  CHECK(canonical_form(F("b -> a -> b")) == F("v1 -> v2 -> v1"));
  CHECK(canonical_form(F("q -> q")) == canonical_form(F("z -> z")));
}

TEST_CASE("rename_apart avoids the given variables") {
  const Formula f = F("x -> v1 -> y");
  Substitution r = rename_apart(f, {V("v1"), V("v2"), V("x")});
  const Formula g = apply_substitution(r, f);
  CHECK(alpha_equal(f, g));
  for (const Formula& v : variables(g)) {
    CHECK(v != V("v1"));
    CHECK(v != V("v2"));
    CHECK(v != V("x"));
  }
}
