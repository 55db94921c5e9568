#include "tagforge/lemmas.hpp"

#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "tagforge/error.hpp"

namespace tagforge {

std::string to_string(LemmaVerdict v) {
  switch (v) {
    case LemmaVerdict::kPass:
      return "pass";
    case LemmaVerdict::kFail:
      return "fail";
    case LemmaVerdict::kInconclusiveBudget:
      return "inconclusive-budget";
  }
  return "fail";
}

bool revalidate(const LemmaReport& report) {
  for (const TraceWitness& w : report.traces) {
    if (!check_trace(report.calculus, w.trace, w.claimed)) return false;
  }
  for (const ChainProof& c : report.chains) {
    if (!chain_check(report.calculus, c)) return false;
  }
  return true;
}

std::string first_letters(std::size_t size) {
  if (size == 0 || size > 26) throw PreconditionError("alphabet size must be in 1..26");
  std::string out;
  for (std::size_t i = 0; i < size; ++i) out.push_back(static_cast<char>('a' + i));
  return out;
}

namespace {

LemmaReport make_report(std::string id, std::string instance) {
  LemmaReport r;
  r.id = std::move(id);
  r.instance = std::move(instance);
  return r;
}

void fail(LemmaReport& r, const Formula& counterexample, std::string detail) {
  r.verdict = LemmaVerdict::kFail;
  r.counterexample = counterexample;
  r.detail = std::move(detail);
}

std::vector<AlphabeticFormula> alphabetic_formulas(const WordCodec& codec, std::size_t max_len) {
  std::vector<AlphabeticFormula> out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (const Word& w : all_words(codec.alphabet(), len)) {
      for (AlphabeticFormula& m : codec.code_word(w).members) out.push_back(std::move(m));
    }
  }
  return out;
}

std::string hat_text(const HatTemplate& h) { return "hat=" + render_formula(h.body()); }

std::string system_text(const TagSystem& t) {
  std::string out = "system=d" + std::to_string(t.deletion());
  for (char c : t.alphabet()) out += std::string(",") + c + ">" + t.production(c);
  return out;
}

}  // namespace

LemmaReport check_lemma1(const HatTemplate& h) {
  LemmaReport r = make_report("lemma1", hat_text(h));
  const Formula x = Formula::var("x");
  const Formula y = Formula::var("y");
  const Formula z = Formula::var("z");
  const Formula c = circ(h, x, y);
  r.resources.checks = 1;
  if (auto mgu = unify(c, Formula::imp(c, z))) {
    fail(r, apply_substitution(*mgu, c), "x o y unifies with (x o y) -> z");
  } else {
    r.detail = "not unifiable";
  }
  return r;
}

std::optional<std::pair<std::size_t, std::size_t>> find_unifiable_pair(const std::vector<Formula>& formulas,
                                                                       std::size_t* checked) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    for (std::size_t j = i + 1; j < formulas.size(); ++j) {
      if (formulas[i] == formulas[j]) continue;
      ++count;
      if (unify_apart(formulas[i], formulas[j])) {
        if (checked) *checked = count;
        return std::pair{i, j};
      }
    }
  }
  if (checked) *checked = count;
  return std::nullopt;
}

LemmaReport check_lemma3(const HatTemplate& h, std::size_t alphabet_size, std::size_t max_len) {
  if (max_len == 0) throw PreconditionError("max_len must be at least 1");
  const WordCodec codec(h, first_letters(alphabet_size));
  LemmaReport r = make_report("lemma3", hat_text(h) + " alphabet=" + std::to_string(alphabet_size) +
                                            " max_len=" + std::to_string(max_len));
  std::vector<Formula> formulas;
  for (const AlphabeticFormula& a : alphabetic_formulas(codec, max_len)) formulas.push_back(a.formula);
  r.resources.generators = formulas.size();
  if (auto pair = find_unifiable_pair(formulas, &r.resources.checks)) {
    auto u = unify_apart(formulas[pair->first], formulas[pair->second]);
    fail(r, apply_substitution(u->mgu, formulas[pair->first]),
         "formulas " + std::to_string(pair->first) + " and " + std::to_string(pair->second) + " unify");
  } else {
    r.detail = std::to_string(formulas.size()) + " formulas, no unifiable distinct pair";
  }
  return r;
}

LemmaReport check_corollary4(const HatTemplate& h, std::size_t alphabet_size, std::size_t max_len) {
  if (max_len == 0) throw PreconditionError("max_len must be at least 1");
  const WordCodec codec(h, first_letters(alphabet_size));
  LemmaReport r = make_report("corollary4", hat_text(h) + " alphabet=" + std::to_string(alphabet_size) +
                                                " max_len=" + std::to_string(max_len));
  std::vector<WordCode> codes;
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (const Word& w : all_words(codec.alphabet(), len)) codes.push_back(codec.code_word(w));
  }
  r.resources.generators = codes.size();
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      for (const AlphabeticFormula& a : codes[i].members) {
        for (const AlphabeticFormula& b : codes[j].members) {
          ++r.resources.checks;
          if (auto u = unify_apart(a.formula, b.formula)) {
            fail(r, apply_substitution(u->mgu, a.formula),
                 "codes of " + codes[i].word + " and " + codes[j].word + " unify");
            return r;
          }
        }
      }
    }
  }
  r.detail = std::to_string(codes.size()) + " codes pairwise non-unifiable";
  return r;
}

namespace {

Calculus weakening_calculus() {
  Calculus k{"K", {}, {}};
  k.add(weakening_axiom());
  return k;
}

// Trace of f from {x -> (y -> x)}: f itself an instance, or f = A -> B with
// B an instance (one weakening step).
std::optional<DerivationTrace> weakening_trace(const Calculus& k, const Formula& f) {
  if (auto s = match_instance(f, k.axioms[0])) {
    return DerivationTrace{{TraceStep{AxiomStep{0, *s}, f}}};
  }
  if (!f.is_imp()) return std::nullopt;
  auto s = match_instance(f.consequent(), k.axioms[0]);
  if (!s) return std::nullopt;
  DerivationTrace base{{TraceStep{AxiomStep{0, *s}, f.consequent()}}};
  return derive_weakening(k, f.consequent(), base, f.antecedent());
}

}  // namespace

LemmaReport check_code_derivability(const HatTemplate& h, std::size_t alphabet_size, std::size_t max_len) {
  const WordCodec codec(h, first_letters(alphabet_size));
  LemmaReport r = make_report("lemma5", hat_text(h) + " alphabet=" + std::to_string(alphabet_size) +
                                            " max_len=" + std::to_string(max_len));
  r.calculus = weakening_calculus();
  for (const AlphabeticFormula& a : alphabetic_formulas(codec, max_len)) {
    ++r.resources.checks;
    auto trace = weakening_trace(r.calculus, a.formula);
    if (!trace) {
      fail(r, a.formula, "code member of " + a.word + " has no trace");
      return r;
    }
    r.traces.push_back({std::move(*trace), a.formula});
  }
  r.detail = std::to_string(r.traces.size()) + " code members derived";
  return r;
}

LemmaReport check_inclusion(const Calculus& pt) {
  LemmaReport r = make_report("lemma12", pt.label + " (" + std::to_string(pt.axioms.size()) + " axioms)");
  r.calculus = weakening_calculus();
  for (const Formula& axiom : pt.axioms) {
    ++r.resources.checks;
    auto trace = weakening_trace(r.calculus, axiom);
    if (!trace) {
      fail(r, axiom, "axiom " + render_formula(axiom) + " has no trace from x -> (y -> x)");
      return r;
    }
    r.traces.push_back({std::move(*trace), axiom});
  }
  r.detail = std::to_string(r.traces.size()) + " axioms derived";
  return r;
}

LemmaReport check_inclusion(const TagSystem& t, const HatTemplate& h) {
  LemmaReport r = check_inclusion(build_PT(t, h));
  r.instance = hat_text(h) + " " + system_text(t);
  return r;
}

// ---------------------------------------------------------------------------
// Chains

DerivationTrace axiom_link(const Calculus& c, std::size_t k, const Formula& from, const Formula& to) {
  const Formula link = Formula::imp(from, to);
  auto s = match_instance(link, c.axioms.at(k));
  if (!s) throw PreconditionError("link is not an instance of axiom " + std::to_string(k));
  return DerivationTrace{{TraceStep{AxiomStep{k, *s}, link}}};
}

namespace {

// Axiom in [first, last) having from -> to as an instance.
std::optional<std::size_t> find_axiom_link(const Calculus& c, std::size_t first, std::size_t last,
                                           const Formula& from, const Formula& to) {
  const Formula link = Formula::imp(from, to);
  for (std::size_t k = first; k < last; ++k) {
    if (match_instance(link, c.axioms[k])) return k;
  }
  return std::nullopt;
}

using Tree = AlphaTree::Ptr;

bool is_right_comb(const Tree& t) {
  const AlphaTree* node = t.get();
  while (!node->is_letter()) {
    if (!node->left()->is_letter()) return false;
    node = node->right().get();
  }
  return true;
}

// Rewrites t towards the right comb using R1 and R2 at the root and R3
// under a right context; returns the successive trees, t first.
std::vector<Tree> to_right_comb(const Tree& t) {
  std::vector<Tree> out{t};
  if (t->is_letter()) return out;
  Tree cur = t;
  // R1: x.(y.z) -> (x.y).z until the right part is a right comb.
  while (!is_right_comb(cur->right())) {
    const Tree& r = cur->right();
    cur = AlphaTree::dot(AlphaTree::dot(cur->left(), r->left()), r->right());
    out.push_back(cur);
  }
  // cur = X . C with C a right comb.
  while (!cur->left()->is_letter()) {
    const Tree& x = cur->left();
    if (x->right()->is_letter()) {
      // R2: (x.y).z -> x.(y.z)
      cur = AlphaTree::dot(x->left(), AlphaTree::dot(x->right(), cur->right()));
    } else {
      // R3: (x.(y.z)).u -> ((x.y).z).u
      const Tree& yz = x->right();
      cur = AlphaTree::dot(AlphaTree::dot(AlphaTree::dot(x->left(), yz->left()), yz->right()), cur->right());
    }
    out.push_back(cur);
  }
  return out;
}

ChainProof chain_through(const WordCodec& codec, const Calculus& c, std::size_t r_offset,
                         const std::vector<Tree>& trees) {
  const std::size_t r_end = r_offset + 4;
  if (r_end > c.axioms.size()) throw PreconditionError("calculus has no R group at the given offset");
  ChainProof chain = ChainProof::empty_at(codec.encode(trees.front()).formula);
  for (std::size_t i = 1; i < trees.size(); ++i) {
    const Formula from = chain.end();
    const Formula to = codec.encode(trees[i]).formula;
    auto k = find_axiom_link(c, r_offset, r_end, from, to);
    if (!k) throw Error("internal: rebracketing step is not an R instance");
    chain.waypoints.push_back(to);
    chain.links.push_back(axiom_link(c, *k, from, to));
  }
  return chain;
}

}  // namespace

ChainProof rebracket_chain(const WordCodec& codec, const Calculus& c, std::size_t r_offset,
                           const AlphabeticFormula& from, const AlphabeticFormula& to) {
  if (from.word != to.word) throw PreconditionError("rebracketing needs equal words");
  std::vector<Tree> path = to_right_comb(from.tree);
  std::vector<Tree> back = to_right_comb(to.tree);
  // Both paths end at the same right comb; walk the second one backwards.
  for (auto it = std::next(back.rbegin()); it != back.rend(); ++it) path.push_back(*it);
  return chain_through(codec, c, r_offset, path);
}

std::vector<ChainProof> build_chain_lemma6(const HatTemplate& h, const std::string& alphabet,
                                           const AlphabeticFormula& a) {
  const WordCodec codec(h, alphabet);
  const Calculus r = transformation_rules(h);
  std::vector<ChainProof> out;
  for (const AlphabeticFormula& target : codec.code_word(a.word).members) {
    out.push_back(rebracket_chain(codec, r, 0, a, target));
  }
  return out;
}

LemmaReport check_lemma6(const HatTemplate& h, std::size_t alphabet_size, std::size_t max_len) {
  const std::string alphabet = first_letters(alphabet_size);
  const WordCodec codec(h, alphabet);
  LemmaReport r = make_report("lemma6", hat_text(h) + " alphabet=" + std::to_string(alphabet_size) +
                                            " max_len=" + std::to_string(max_len));
  r.calculus = transformation_rules(h);
  for (const AlphabeticFormula& a : alphabetic_formulas(codec, max_len)) {
    std::vector<ChainProof> chains = build_chain_lemma6(h, alphabet, a);
    const std::vector<AlphabeticFormula> targets = codec.code_word(a.word).members;
    for (std::size_t i = 0; i < chains.size(); ++i) {
      ++r.resources.checks;
      if (chains[i].start() != a.formula || chains[i].end() != targets[i].formula ||
          !chain_check(r.calculus, chains[i])) {
        fail(r, a.formula, "bad chain for word " + a.word);
        return r;
      }
      r.chains.push_back(std::move(chains[i]));
    }
  }
  r.detail = std::to_string(r.chains.size()) + " chains";
  return r;
}

ChainProof build_chain_lemma7(const TagSystem& t, const HatTemplate& h, const Word& xi) {
  auto next = tag_step(t, xi);
  if (!next) throw PreconditionError("no production applies to '" + xi + "'");
  const WordCodec codec(h, t.alphabet());
  const Calculus pt = build_PT(t, h);
  const std::size_t r_offset = pt.first_tagged("R");
  const std::size_t d = t.deletion();
  const Word head = xi.substr(0, d);
  const Word beta = xi.substr(d);
  const Word& omega = t.production(xi[0]);

  const AlphabeticFormula start = codec.right_comb(xi);
  if (beta.empty()) {
    const Formula to = codec.right_comb(omega).formula;
    auto k = find_axiom_link(pt, pt.first_tagged("T2"), r_offset, start.formula, to);
    if (!k) throw Error("internal: no T2 axiom for '" + xi + "'");
    return ChainProof{{start.formula, to}, {axiom_link(pt, *k, start.formula, to)}};
  }

  const AlphabeticFormula split = codec.join(codec.right_comb(head), codec.right_comb(beta));
  ChainProof chain = rebracket_chain(codec, pt, r_offset, start, split);
  const AlphabeticFormula shifted = codec.join(codec.right_comb(beta), codec.right_comb(omega));
  auto k = find_axiom_link(pt, pt.first_tagged("T1"), pt.first_tagged("T2"), split.formula, shifted.formula);
  if (!k) throw Error("internal: no T1 axiom for '" + xi + "'");
  chain.append(ChainProof{{split.formula, shifted.formula}, {axiom_link(pt, *k, split.formula, shifted.formula)}});
  chain.append(rebracket_chain(codec, pt, r_offset, shifted, codec.right_comb(*next)));
  return chain;
}

LemmaReport check_lemma7(const TagSystem& t, const HatTemplate& h, const Word& xi) {
  LemmaReport r = make_report("lemma7", hat_text(h) + " xi=" + xi + " " + system_text(t));
  r.calculus = build_PT(t, h);
  ChainProof chain = build_chain_lemma7(t, h, xi);
  const WordCodec codec(h, t.alphabet());
  r.resources.checks = chain.length();
  if (chain.start() != codec.right_comb(xi).formula || chain.end() != codec.right_comb(*tag_step(t, xi)).formula ||
      !chain_check(r.calculus, chain)) {
    fail(r, chain.end(), "production chain does not validate");
    return r;
  }
  r.detail = "chain of " + std::to_string(chain.length()) + " links from " + xi + " to " + *tag_step(t, xi);
  r.chains.push_back(std::move(chain));
  return r;
}

ChainProof build_run_chain(const TagSystem& t, const HatTemplate& h, const Word& xi, std::size_t max_steps) {
  const WordCodec codec(h, t.alphabet());
  ChainProof chain = ChainProof::empty_at(codec.right_comb(xi).formula);
  Word w = xi;
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto next = tag_step(t, w);
    if (!next) break;
    chain.append(build_chain_lemma7(t, h, w));
    w = std::move(*next);
  }
  return chain;
}

LemmaReport check_corollary5(const TagSystem& t, const HatTemplate& h, const Word& xi, std::size_t max_steps) {
  LemmaReport r = make_report("corollary5", hat_text(h) + " input=" + xi + " " + system_text(t));
  r.calculus = build_PT(t, h);
  const RunOutcome run = tag_run(t, xi, max_steps);
  const Word last = std::visit([](const auto& o) { return o.word; }, run);
  ChainProof chain = build_run_chain(t, h, xi, max_steps);
  r.resources.checks = chain.length();
  const WordCodec codec(h, t.alphabet());
  if (chain.end() != codec.right_comb(last).formula || !chain_check(r.calculus, chain)) {
    fail(r, chain.end(), "run chain does not validate");
    return r;
  }
  r.detail = "chain of " + std::to_string(chain.length()) + " links from " + xi + " to " + last;
  r.chains.push_back(std::move(chain));
  return r;
}

// ---------------------------------------------------------------------------
// Closure characterization

LemmaReport classify_closure(const std::string& id, const Calculus& closure, const std::vector<Formula>& reference,
                             const TagSystem& t, const HatTemplate& h, const Word& alpha, std::size_t n,
                             std::optional<std::size_t> guard, ClosureOptions options) {
  LemmaReport r = make_report(id, closure.label + " alpha=" + alpha + " n=" + std::to_string(n));
  const std::size_t top = guard ? std::min(n, *guard) : n;
  std::unordered_set<Formula> classified;
  try {
    ClosureEngine engine(closure, options);
    for (std::size_t level = 0; level <= top; ++level) {
      if (level > 0) engine.advance();
      r.resources.levels = level;
      r.resources.generators = engine.current().generators.size();
      for (const Generator& g : engine.current().generators) {
        if (!classified.insert(g.formula).second) continue;
        ++r.resources.checks;
        bool member = false;
        for (const Formula& axiom : reference) {
          if (match_instance(g.formula, axiom)) {
            member = true;
            break;
          }
        }
        if (!member) member = t_alpha_member(t, alpha, g.formula, h, std::max<std::size_t>(n, 1));
        if (!member) {
          fail(r, g.formula, "unclassified generator at level " + std::to_string(level));
          return r;
        }
      }
      if (engine.saturated()) break;
    }
  } catch (const BudgetExceeded& e) {
    r.verdict = LemmaVerdict::kInconclusiveBudget;
    r.detail = e.what();
    return r;
  }
  r.detail = std::to_string(classified.size()) + " generators classified through level " +
             std::to_string(r.resources.levels);
  return r;
}

namespace {

ReductionBundle bundle_with_hat(const TagSystem& t, const Calculus& p0, const HatTemplate& h, const Word& input) {
  if (input.empty()) throw PreconditionError("input word must be nonempty");
  t.validate(input);
  Calculus pt = build_PT(t, h);
  Calculus hx = build_H(t, p0, h);
  Calculus full{"P_T,P0,xi", {}, {}};
  for (std::size_t i = 0; i < pt.axioms.size(); ++i) full.add(pt.axioms[i], pt.tags[i]);
  for (const Formula& a : hx.axioms) full.add(a, "H");
  for (const AlphabeticFormula& m : WordCodec(h, t.alphabet()).code_word(input).members) full.add(m.formula, "input");
  return ReductionBundle{t, p0, h, input, std::move(pt), std::move(hx), std::move(full)};
}

}  // namespace

LemmaReport check_production(const TagSystem& t, const Calculus& p0, const HatTemplate& h, const Word& alpha,
                             std::size_t n, ClosureOptions options) {
  const ReductionBundle bundle = bundle_with_hat(t, p0, h, alpha);

  Calculus with_alpha = bundle.pt;
  with_alpha.label = "P_T,alpha";
  for (const AlphabeticFormula& m : bundle.codec().code_word(alpha).members) with_alpha.add(m.formula, "input");
  LemmaReport first = classify_closure("lemma9", with_alpha, bundle.pt.axioms, t, h, alpha, n, std::nullopt, options);
  if (first.verdict != LemmaVerdict::kPass) return first;

  std::optional<std::size_t> guard;
  try {
    guard = compute_N(bundle, n, options);
  } catch (const BudgetExceeded& e) {
    LemmaReport r = first;
    r.id = "lemma9+10";
    r.verdict = LemmaVerdict::kInconclusiveBudget;
    r.detail = e.what();
    return r;
  }
  std::vector<Formula> reference = bundle.pt.axioms;
  reference.insert(reference.end(), bundle.h_axioms.axioms.begin(), bundle.h_axioms.axioms.end());
  LemmaReport second = classify_closure("lemma10", bundle.full, reference, t, h, alpha, n, guard, options);

  LemmaReport r = second;
  r.id = "lemma9+10";
  r.instance = hat_text(h) + " alpha=" + alpha + " n=" + std::to_string(n) + " " + system_text(t);
  r.resources.checks += first.resources.checks;
  r.resources.levels = std::max(first.resources.levels, second.resources.levels);
  r.resources.generators = std::max(first.resources.generators, second.resources.generators);
  if (r.verdict == LemmaVerdict::kPass) {
    r.detail = "P_T+alpha: " + first.detail + "; full (N=" + (guard ? std::to_string(*guard) : "none") +
               "): " + second.detail;
  }
  return r;
}

std::optional<std::size_t> compute_N(const ReductionBundle& bundle, std::size_t max_level, ClosureOptions options) {
  const WordCodec codec = bundle.codec();
  std::vector<Formula> short_codes;
  for (std::size_t len = 1; len < bundle.tag.deletion(); ++len) {
    for (const Word& w : all_words(bundle.tag.alphabet(), len)) {
      for (const AlphabeticFormula& m : codec.code_word(w).members) short_codes.push_back(m.formula);
    }
  }
  if (short_codes.empty()) return std::nullopt;
  ClosureEngine engine(bundle.full, options);
  for (std::size_t level = 0; level <= max_level; ++level) {
    if (level > 0) {
      if (engine.saturated()) break;
      engine.advance();
    }
    for (const Generator& g : engine.current().generators) {
      for (const Formula& m : short_codes) {
        if (match_instance(m, g.formula) || match_instance(g.formula, m)) return level;
      }
    }
  }
  return std::nullopt;
}

LemmaReport check_halting_equivalence(const TagSystem& t, const Calculus& p0, const Word& input,
                                      std::size_t budget, ClosureOptions options) {
  if (p0.axioms.empty()) throw PreconditionError("P0 must be nonempty");
  if (t.deletion() < 2) throw PreconditionError("deletion number must be at least 2");
  const ReductionBundle bundle = build_reduction(t, p0, input);
  LemmaReport r = make_report("lemma11", hat_text(bundle.hat) + " input=" + input + " budget=" +
                                             std::to_string(budget) + " " + system_text(t));
  r.calculus = bundle.full;

  const RunOutcome run = tag_run(t, input, budget);
  const bool halted = std::holds_alternative<Halted>(run);
  try {
    for (const Formula& a : p0.axioms) {
      Verdict v = derives(bundle.full, a, budget, options);
      ++r.resources.checks;
      if (auto* d = std::get_if<Derivable>(&v)) {
        r.resources.levels = std::max(r.resources.levels, d->level);
        if (!halted) {
          fail(r, a, "derivable although the run did not halt within budget");
          return r;
        }
        r.traces.push_back({std::move(d->trace), a});
      } else {
        r.resources.levels = std::max(r.resources.levels, std::get<NotFoundWithinBudget>(v).levels_explored);
        if (halted) {
          fail(r, a, "run halts but P0 axiom not derived within budget");
          return r;
        }
      }
    }
  } catch (const BudgetExceeded& e) {
    r.verdict = LemmaVerdict::kInconclusiveBudget;
    r.detail = e.what();
    return r;
  }

  if (halted) {
    r.detail = "halts after " + std::to_string(std::get<Halted>(run).steps) + " steps; all " +
               std::to_string(p0.axioms.size()) + " P0 axioms derived";
    return r;
  }
  LemmaReport production = check_production(t, p0, bundle.hat, input, budget, options);
  r.resources.checks += production.resources.checks;
  r.resources.generators = production.resources.generators;
  if (production.verdict == LemmaVerdict::kFail) {
    fail(r, *production.counterexample, "production check failed: " + production.detail);
    return r;
  }
  r.verdict = LemmaVerdict::kInconclusiveBudget;
  r.detail = "no halt within budget; no P0 axiom derived; production check " + to_string(production.verdict) +
             " (" + production.detail + ")";
  return r;
}

// ---------------------------------------------------------------------------
// Chain search over alphabetic waypoints

LemmaReport check_corollary6(const TagSystem& t, const HatTemplate& h, Corollary6Options options) {
  LemmaReport r = make_report("corollary6", hat_text(h) + " max_len=" + std::to_string(options.max_word_length) +
                                                " cap=" + std::to_string(options.waypoint_length_cap) +
                                                " " + system_text(t));
  r.calculus = build_PT(t, h);
  const Calculus& pt = r.calculus;
  const WordCodec codec(h, t.alphabet());

  struct Edge {
    Formula to;
    std::size_t axiom;
  };
  std::unordered_map<Formula, std::vector<Edge>> successors;
  auto edges = [&](const Formula& from) -> const std::vector<Edge>& {
    auto it = successors.find(from);
    if (it != successors.end()) return it->second;
    std::vector<Edge> out;
    for (std::size_t k = 0; k < pt.axioms.size(); ++k) {
      auto s = match_instance(from, pt.axioms[k].antecedent());
      if (!s) continue;
      const Formula to = apply_substitution(*s, pt.axioms[k].consequent());
      auto decoded = codec.decode(to);
      if (!decoded || decoded->word.size() > options.waypoint_length_cap) continue;
      out.push_back({to, k});
    }
    return successors.emplace(from, std::move(out)).first->second;
  };

  for (std::size_t len = 1; len <= options.max_word_length; ++len) {
    for (const Word& xi : all_words(t.alphabet(), len)) {
      const Formula start = codec.right_comb(xi).formula;
      std::unordered_map<Formula, std::pair<Formula, std::size_t>> parent;
      std::unordered_map<Formula, std::size_t> depth{{start, 0}};
      std::deque<Formula> queue{start};
      std::set<Word> reached_words;
      while (!queue.empty()) {
        const Formula cur = queue.front();
        queue.pop_front();
        const std::size_t dcur = depth.at(cur);
        if (dcur == options.max_links) continue;
        for (const Edge& e : edges(cur)) {
          if (!depth.emplace(e.to, dcur + 1).second) continue;
          parent.emplace(e.to, std::pair{cur, e.axiom});
          queue.push_back(e.to);
          const Word zeta = codec.decode(e.to)->word;
          ++r.resources.checks;
          if (zeta.size() > options.max_word_length || !reached_words.insert(zeta).second) continue;
          // Witness chain back to the start.
          std::vector<std::pair<Formula, std::size_t>> back;
          for (Formula f = e.to; f != start; f = parent.at(f).first) back.push_back({f, parent.at(f).second});
          ChainProof chain = ChainProof::empty_at(start);
          for (auto it = back.rbegin(); it != back.rend(); ++it) {
            const Formula from = chain.end();
            chain.waypoints.push_back(it->first);
            chain.links.push_back(axiom_link(pt, it->second, from, it->first));
          }
          const std::size_t budget = 1 + chain.length() * 4;
          if (zeta != xi && !tag_reaches(t, xi, zeta, std::max<std::size_t>(budget, 64))) {
            r.chains.push_back(std::move(chain));
            fail(r, e.to, "chain from " + xi + " reaches " + zeta + " which the tag system does not produce");
            return r;
          }
          r.chains.push_back(std::move(chain));
        }
      }
      r.resources.generators += depth.size();
    }
  }
  r.detail = std::to_string(r.chains.size()) + " (xi, zeta) pairs connected, all produced by the tag system";
  return r;
}

}  // namespace tagforge
