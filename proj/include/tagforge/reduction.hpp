#pragma once

// Calculi simulating a tag system:
//
//   T1   a_i alpha . x -> x . w_i      for every |alpha| = d - 1
//   T2   a_i alpha     -> w_i
//   R1   x . (y . z)       -> (x . y) . z
//   R2   (x . y) . z       -> x . (y . z)
//   R3   (x . (y . z)) . u -> ((x . y) . z) . u
//   R4   ((x . y) . z) . u -> (x . (y . z)) . u
//   H    alpha -> A                    for 0 < |alpha| < d, A in P0
//
// Word abbreviations expand to every bracketing of the word; all of them
// share the letter variable p.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tagforge/calculus.hpp"
#include "tagforge/codec.hpp"
#include "tagforge/tag_system.hpp"

namespace tagforge {

// All words of length n over `alphabet`, in lexicographic alphabet order.
std::vector<Word> all_words(const std::string& alphabet, std::size_t n);

// R1..R4, tagged "R".
Calculus transformation_rules(const HatTemplate& h);

// T1, T2 and R axioms, tagged "T1", "T2", "R". For d = 1 the words
// a_i alpha degenerate to single letters.
Calculus build_PT(const TagSystem& t, const HatTemplate& h);

// Halting axioms, tagged "H". P0 axioms mentioning p are renamed apart from
// the letter variable first.
Calculus build_H(const TagSystem& t, const Calculus& p0, const HatTemplate& h);

struct ReductionBundle {
  TagSystem tag;
  Calculus p0;
  HatTemplate hat;
  Word input;
  Calculus pt;
  Calculus h_axioms;
  // pt + h_axioms + code of the input (tagged "input"), in that order.
  Calculus full;

  WordCodec codec() const { return WordCodec(hat, tag.alphabet()); }
};

ReductionBundle build_reduction(const TagSystem& t, const Calculus& p0, const Word& input,
                                const std::vector<HatTemplate>& candidates = default_hat_candidates());

// Membership of f in T_alpha*: f is an instance of an alphabetic formula
// whose word is alpha or is reached from alpha within max_steps.
bool t_alpha_member(const TagSystem& t, const Word& alpha, const Formula& f, const HatTemplate& h,
                    std::size_t max_steps);

}  // namespace tagforge
