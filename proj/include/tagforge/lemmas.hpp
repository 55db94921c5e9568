#pragma once

// Instance-level verification of the reduction: constructive chain
// builders, closure classification, and the halting equivalence at desk
// scale. Every passing report carries evidence that revalidate() re-checks
// through the trace kernel.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tagforge/calculus.hpp"
#include "tagforge/codec.hpp"
#include "tagforge/inference.hpp"
#include "tagforge/reduction.hpp"
#include "tagforge/tag_system.hpp"

namespace tagforge {

enum class LemmaVerdict { kPass, kFail, kInconclusiveBudget };

std::string to_string(LemmaVerdict v);

struct TraceWitness {
  DerivationTrace trace;
  Formula claimed;
};

struct LemmaReport {
  std::string id;
  std::string instance;
  LemmaVerdict verdict = LemmaVerdict::kPass;
  std::string detail;

  // Evidence, checked against `calculus`.
  Calculus calculus;
  std::vector<TraceWitness> traces;
  std::vector<ChainProof> chains;
  std::optional<Formula> counterexample;

  struct Resources {
    std::size_t levels = 0;
    std::size_t generators = 0;
    std::size_t checks = 0;
  } resources;

  bool passed() const { return verdict == LemmaVerdict::kPass; }
};

// Re-checks every trace and chain of the report with the kernel.
bool revalidate(const LemmaReport& report);

// First `size` letters of a..z.
std::string first_letters(std::size_t size);

// x o y and (x o y) -> z do not unify (variables shared as written).
LemmaReport check_lemma1(const HatTemplate& h);

// Indices (i, j), i < j, of two distinct formulas that unify once renamed
// apart, or nothing. Equal formulas are skipped.
std::optional<std::pair<std::size_t, std::size_t>> find_unifiable_pair(const std::vector<Formula>& formulas,
                                                                       std::size_t* checked = nullptr);

// No two distinct alphabetic formulas over words up to max_len unify.
LemmaReport check_lemma3(const HatTemplate& h, std::size_t alphabet_size, std::size_t max_len);

// Codes of distinct words up to max_len are pairwise non-unifiable.
LemmaReport check_corollary4(const HatTemplate& h, std::size_t alphabet_size, std::size_t max_len);

// Every member of every code up to max_len is derivable from x -> (y -> x).
LemmaReport check_code_derivability(const HatTemplate& h, std::size_t alphabet_size, std::size_t max_len);

// One-step trace proving from -> to as an instance of axiom k.
DerivationTrace axiom_link(const Calculus& c, std::size_t k, const Formula& from, const Formula& to);

// Chain from `from` to `to` (same word) using only R axioms, whose R1 sits
// at index r_offset of `c`.
ChainProof rebracket_chain(const WordCodec& codec, const Calculus& c, std::size_t r_offset,
                           const AlphabeticFormula& from, const AlphabeticFormula& to);

// One chain in R from a to every member of code(word(a)), in code order.
std::vector<ChainProof> build_chain_lemma6(const HatTemplate& h, const std::string& alphabet,
                                           const AlphabeticFormula& a);

// Chain in P_T from the right-nested code of xi to that of step(xi).
ChainProof build_chain_lemma7(const TagSystem& t, const HatTemplate& h, const Word& xi);

// Single-step chains concatenated along the run from xi, until it halts or
// max_steps productions.
ChainProof build_run_chain(const TagSystem& t, const HatTemplate& h, const Word& xi, std::size_t max_steps);

LemmaReport check_lemma6(const HatTemplate& h, std::size_t alphabet_size, std::size_t max_len);
LemmaReport check_lemma7(const TagSystem& t, const HatTemplate& h, const Word& xi);
LemmaReport check_corollary5(const TagSystem& t, const HatTemplate& h, const Word& xi, std::size_t max_steps);

// Saturates `closure` to level n and classifies each generator as an
// instance of a `reference` axiom or a member of T_alpha*. Levels above
// `guard` are not classified.
LemmaReport classify_closure(const std::string& id, const Calculus& closure, const std::vector<Formula>& reference,
                             const TagSystem& t, const HatTemplate& h, const Word& alpha, std::size_t n,
                             std::optional<std::size_t> guard = std::nullopt, ClosureOptions options = {});

// Classifies P_T + code(alpha) against P_T, then the full reduction against
// P_T + H up to N.
LemmaReport check_production(const TagSystem& t, const Calculus& p0, const HatTemplate& h, const Word& alpha,
                             std::size_t n, ClosureOptions options = {});

// Least condensed level whose generators meet the code of a word shorter
// than d, within max_level.
std::optional<std::size_t> compute_N(const ReductionBundle& bundle, std::size_t max_level,
                                     ClosureOptions options = {});

LemmaReport check_halting_equivalence(const TagSystem& t, const Calculus& p0, const Word& input,
                                      std::size_t budget, ClosureOptions options = {});

// Every axiom of pt gets a trace from {x -> (y -> x)}.
LemmaReport check_inclusion(const Calculus& pt);
LemmaReport check_inclusion(const TagSystem& t, const HatTemplate& h);

struct Corollary6Options {
  std::size_t max_word_length = 4;
  std::size_t waypoint_length_cap = 5;
  std::size_t max_links = 16;
};

// Bounded search for alphabetic chains in P_T; every word reached must be
// produced by the tag system.
LemmaReport check_corollary6(const TagSystem& t, const HatTemplate& h, Corollary6Options options = {});

}  // namespace tagforge
