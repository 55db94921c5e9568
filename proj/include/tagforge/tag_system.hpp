#pragma once

// Post tag systems: alphabet a_1..a_m, productions a_i -> w_i, deletion d.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tagforge {

// Letters are single characters 'a'..'z'.
using Word = std::string;

class TagSystem {
 public:
  // Throws PreconditionError on duplicate letters, empty or foreign
  // productions, d < 1, or an empty alphabet.
  TagSystem(std::string alphabet, std::map<char, Word> productions, std::size_t deletion);

  const std::string& alphabet() const { return alphabet_; }
  std::size_t size() const { return alphabet_.size(); }
  std::size_t deletion() const { return deletion_; }

  // 1-based position of a letter in the alphabet, 0 if absent.
  std::size_t index_of(char letter) const;
  bool contains(char letter) const { return index_of(letter) != 0; }

  const Word& production(char letter) const;
  std::size_t max_production_length() const;

  // Throws PreconditionError if w uses a letter outside the alphabet.
  void validate(std::string_view w) const;

  // Serializes in the tag-file format, letters in alphabet order.
  std::string to_text() const;

  friend bool operator==(const TagSystem&, const TagSystem&) = default;

 private:
  std::string alphabet_;
  std::map<char, Word> productions_;
  std::size_t deletion_;
};

// Tag-file format: first nonblank line `d=<int>`, then `<letter> -> <word>`
// lines; lines starting with `#` are comments.
TagSystem parse_tag_system(std::string_view text);

std::optional<Word> tag_step(const TagSystem& t, std::string_view w);

struct Halted {
  Word word;
  std::size_t steps;
  friend bool operator==(const Halted&, const Halted&) = default;
};

struct BudgetExhausted {
  Word word;
  friend bool operator==(const BudgetExhausted&, const BudgetExhausted&) = default;
};

using RunOutcome = std::variant<Halted, BudgetExhausted>;

RunOutcome tag_run(const TagSystem& t, std::string_view w, std::size_t max_steps);

// True iff the run from `from` reaches `to` after between 1 and max_steps
// productions. Stops early when the run halts or revisits a word.
bool tag_reaches(const TagSystem& t, std::string_view from, std::string_view to,
                 std::size_t max_steps);

}  // namespace tagforge
