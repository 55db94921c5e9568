#pragma once

// Encoding of letters and words as one-variable implicational formulas.
//
// A hat template x^ is any formula whose only variable is x. With it,
//
//   a o b  := ((b^ -> b^) -> b^) -> (a^ -> ((b^ -> b^) -> b^))
//   a . b  := ((a -> a) -> a) o b
//   code(a_i) := (p -> (p -> ... -> p)) o p        (i implications)
//
// and a word is encoded by the set of all its bracketings under `.`.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagforge/calculus.hpp"
#include "tagforge/formula.hpp"
#include "tagforge/tag_system.hpp"

namespace tagforge {

// The variable shared by every letter code.
Formula letter_variable();

class HatTemplate {
 public:
  // The bare variable x.
  HatTemplate();
  // Throws PreconditionError unless the only variable of body is x.
  explicit HatTemplate(Formula body);

  static HatTemplate parse(std::string_view text) { return HatTemplate(parse_formula(text)); }

  const Formula& body() const { return body_; }
  bool is_identity() const;

  // Body with x replaced by f.
  Formula at(const Formula& f) const;
  // Inverse of at(): the f with at(f) == g, if any.
  std::optional<Formula> strip(const Formula& g) const;

  friend bool operator==(const HatTemplate&, const HatTemplate&) = default;

 private:
  Formula body_;
};

// [x, x -> x, x -> (x -> x), ...], `count` entries.
std::vector<HatTemplate> default_hat_candidates(std::size_t count = 8);

Formula hat_at(const HatTemplate& h, const Formula& f);
Formula circ(const HatTemplate& h, const Formula& a, const Formula& b);

// circ with F^[a] (every variable of F replaced by a^) in the inner
// antecedent. F must not contain the variable x.
Formula circ_general(const HatTemplate& h, const Formula& f, const Formula& a, const Formula& b);

Formula code_letter(const HatTemplate& h, std::size_t index);
Formula dot(const HatTemplate& h, const Formula& a, const Formula& b);

// Parse tree of an alphabetic formula: a letter index or a dot of two trees.
class AlphaTree {
 public:
  using Ptr = std::shared_ptr<const AlphaTree>;

  static Ptr letter(std::size_t index);
  static Ptr dot(Ptr left, Ptr right);

  bool is_letter() const { return left_ == nullptr; }
  std::size_t index() const { return index_; }
  const Ptr& left() const { return left_; }
  const Ptr& right() const { return right_; }
  std::size_t length() const { return length_; }

  friend bool operator==(const AlphaTree& a, const AlphaTree& b);

 private:
  std::size_t index_ = 0;
  Ptr left_;
  Ptr right_;
  std::size_t length_ = 1;
};

struct AlphabeticFormula {
  Formula formula;
  AlphaTree::Ptr tree;
  Word word;
};

struct WordCode {
  Word word;
  std::vector<AlphabeticFormula> members;
};

// Result of reading a formula as sigma(A) for an alphabetic A, where sigma
// only touches the letter variable p.
struct InstanceDecoding {
  AlphabeticFormula alphabetic;
  Formula letter_value;
};

class WordCodec {
 public:
  WordCodec(HatTemplate hat, std::string alphabet);

  const HatTemplate& hat() const { return hat_; }
  const std::string& alphabet() const { return alphabet_; }

  AlphabeticFormula letter(char c) const;
  AlphabeticFormula join(const AlphabeticFormula& a, const AlphabeticFormula& b) const;
  AlphabeticFormula encode(const AlphaTree::Ptr& tree) const;

  // a_1 . (a_2 . (... . a_n))
  AlphabeticFormula right_comb(std::string_view w) const;

  // All bracketings, ordered by split point and then recursively by the
  // parts; |members| = Catalan(|w| - 1).
  WordCode code_word(std::string_view w) const;

  // Present iff f is exactly an alphabetic formula over this codec.
  std::optional<AlphabeticFormula> decode(const Formula& f) const;
  // Present iff f is a substitution instance of an alphabetic formula.
  std::optional<InstanceDecoding> decode_instance(const Formula& f) const;

  Word word_of(const AlphaTree& tree) const;

 private:
  HatTemplate hat_;
  std::string alphabet_;
};

// The first candidate h such that no axiom of p0 is an instance of
// circ(h, x, y) or circ(h, x, y) -> z. Throws PreconditionError if none.
HatTemplate choose_hat(const Calculus& p0, const std::vector<HatTemplate>& candidates);

std::size_t catalan(std::size_t n);

}  // namespace tagforge
