#include "tagforge/reduction.hpp"

#include "tagforge/error.hpp"

namespace tagforge {

std::vector<Word> all_words(const std::string& alphabet, std::size_t n) {
  std::vector<Word> out{Word()};
  for (std::size_t len = 0; len < n; ++len) {
    std::vector<Word> longer;
    longer.reserve(out.size() * alphabet.size());
    for (const Word& w : out) {
      for (char c : alphabet) longer.push_back(w + c);
    }
    out = std::move(longer);
  }
  return out;
}

Calculus transformation_rules(const HatTemplate& h) {
  const Formula x = Formula::var("x");
  const Formula y = Formula::var("y");
  const Formula z = Formula::var("z");
  const Formula u = Formula::var("u");
  auto d = [&](const Formula& a, const Formula& b) { return dot(h, a, b); };
  Calculus r{"R", {}, {}};
  r.add(Formula::imp(d(x, d(y, z)), d(d(x, y), z)), "R");
  r.add(Formula::imp(d(d(x, y), z), d(x, d(y, z))), "R");
  r.add(Formula::imp(d(d(x, d(y, z)), u), d(d(d(x, y), z), u)), "R");
  r.add(Formula::imp(d(d(d(x, y), z), u), d(d(x, d(y, z)), u)), "R");
  return r;
}

Calculus build_PT(const TagSystem& t, const HatTemplate& h) {
  const WordCodec codec(h, t.alphabet());
  const Formula x = Formula::var("x");
  const std::vector<Word> tails = all_words(t.alphabet(), t.deletion() - 1);

  Calculus pt{"P_T", {}, {}};
  for (const char* group : {"T1", "T2"}) {
    const bool shifted = std::string(group) == "T1";
    for (char letter : t.alphabet()) {
      const WordCode produced = codec.code_word(t.production(letter));
      for (const Word& tail : tails) {
        const WordCode consumed = codec.code_word(letter + tail);
        for (const AlphabeticFormula& a : consumed.members) {
          for (const AlphabeticFormula& b : produced.members) {
            if (shifted) {
              pt.add(Formula::imp(dot(h, a.formula, x), dot(h, x, b.formula)), group);
            } else {
              pt.add(Formula::imp(a.formula, b.formula), group);
            }
          }
        }
      }
    }
  }
  for (const Formula& rule : transformation_rules(h).axioms) pt.add(rule, "R");
  return pt;
}

namespace {

Formula away_from_letter_variable(const Formula& f) {
  const Formula p = letter_variable();
  if (!contains_var(f, p)) return f;
  Substitution s;
  s.bind(p, apply_substitution(rename_apart(p, variables(f)), p));
  return apply_substitution(s, f);
}

}  // namespace

Calculus build_H(const TagSystem& t, const Calculus& p0, const HatTemplate& h) {
  const WordCodec codec(h, t.alphabet());
  Calculus out{"H", {}, {}};
  for (std::size_t len = 1; len < t.deletion(); ++len) {
    for (const Word& w : all_words(t.alphabet(), len)) {
      for (const AlphabeticFormula& member : codec.code_word(w).members) {
        for (const Formula& axiom : p0.axioms) {
          out.add(Formula::imp(member.formula, away_from_letter_variable(axiom)), "H");
        }
      }
    }
  }
  return out;
}

ReductionBundle build_reduction(const TagSystem& t, const Calculus& p0, const Word& input,
                                const std::vector<HatTemplate>& candidates) {
  if (input.empty()) throw PreconditionError("input word must be nonempty");
  t.validate(input);
  HatTemplate hat = choose_hat(p0, candidates);
  Calculus pt = build_PT(t, hat);
  Calculus h_axioms = build_H(t, p0, hat);

  Calculus full{"P_T,P0,xi", {}, {}};
  for (std::size_t i = 0; i < pt.axioms.size(); ++i) full.add(pt.axioms[i], pt.tags[i]);
  for (const Formula& a : h_axioms.axioms) full.add(a, "H");
  for (const AlphabeticFormula& m : WordCodec(hat, t.alphabet()).code_word(input).members) full.add(m.formula, "input");

  return ReductionBundle{t, p0, std::move(hat), input, std::move(pt), std::move(h_axioms), std::move(full)};
}

bool t_alpha_member(const TagSystem& t, const Word& alpha, const Formula& f, const HatTemplate& h,
                    std::size_t max_steps) {
  if (alpha.empty()) throw PreconditionError("alpha must be nonempty");
  auto decoded = WordCodec(h, t.alphabet()).decode_instance(f);
  if (!decoded) return false;
  const Word& w = decoded->alphabetic.word;
  return w == alpha || tag_reaches(t, alpha, w, max_steps);
}

}  // namespace tagforge
