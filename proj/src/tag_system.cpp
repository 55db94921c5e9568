#include "tagforge/tag_system.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "tagforge/error.hpp"

namespace tagforge {

TagSystem::TagSystem(std::string alphabet, std::map<char, Word> productions, std::size_t deletion)
    : alphabet_(std::move(alphabet)), productions_(std::move(productions)), deletion_(deletion) {
  if (alphabet_.empty()) throw PreconditionError("tag system needs at least one letter");
  if (deletion_ < 1) throw PreconditionError("deletion number must be at least 1");
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    char c = alphabet_[i];
    if (c < 'a' || c > 'z') throw PreconditionError(std::string("invalid letter '") + c + "'");
    if (alphabet_.find(c, i + 1) != std::string::npos) {
      throw PreconditionError(std::string("duplicate letter '") + c + "'");
    }
    auto it = productions_.find(c);
    if (it == productions_.end()) throw PreconditionError(std::string("no production for '") + c + "'");
    if (it->second.empty()) throw PreconditionError(std::string("empty production for '") + c + "'");
  }
  for (const auto& [letter, word] : productions_) {
    if (!contains(letter)) throw PreconditionError(std::string("production for unknown letter '") + letter + "'");
    for (char c : word) {
      if (!contains(c)) {
        throw PreconditionError(std::string("unknown letter '") + c + "' in production of '" + letter + "'");
      }
    }
  }
}

std::size_t TagSystem::index_of(char letter) const {
  auto pos = alphabet_.find(letter);
  return pos == std::string::npos ? 0 : pos + 1;
}

const Word& TagSystem::production(char letter) const {
  auto it = productions_.find(letter);
  if (it == productions_.end()) throw PreconditionError(std::string("letter '") + letter + "' outside alphabet");
  return it->second;
}

std::size_t TagSystem::max_production_length() const {
  std::size_t m = 0;
  for (const auto& [letter, word] : productions_) m = std::max(m, word.size());
  return m;
}

void TagSystem::validate(std::string_view w) const {
  for (char c : w) {
    if (!contains(c)) throw PreconditionError(std::string("letter '") + c + "' outside alphabet");
  }
}

std::string TagSystem::to_text() const {
  std::string out = "d=" + std::to_string(deletion_) + "\n";
  for (char c : alphabet_) out += std::string(1, c) + " -> " + productions_.at(c) + "\n";
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

TagSystem parse_tag_system(std::string_view text) {
  std::optional<std::size_t> deletion;
  std::string alphabet;
  std::map<char, Word> productions;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(offset, end - offset));
    std::size_t line_start = offset;
    offset = end + 1;
    if (line.empty() || line.front() == '#') continue;

    if (!deletion) {
      if (line.substr(0, 2) != "d=") throw ParseError("expected 'd=<int>' line", line_start);
      std::string_view digits = trim(line.substr(2));
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError("deletion number must be a positive integer", line_start);
      }
      if (digits.size() > 9) throw ParseError("deletion number too large", line_start);
      deletion = std::stoul(std::string(digits));
      if (*deletion == 0) throw ParseError("deletion number must be positive", line_start);
      continue;
    }

    auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected '<letter> -> <word>'", line_start);
    std::string_view lhs = trim(line.substr(0, arrow));
    std::string_view rhs = trim(line.substr(arrow + 2));
    if (lhs.size() != 1 || lhs[0] < 'a' || lhs[0] > 'z') {
      throw ParseError("left side must be a single letter a-z", line_start);
    }
    char letter = lhs[0];
    if (productions.contains(letter)) {
      throw ParseError(std::string("duplicate letter '") + letter + "'", line_start);
    }
    if (rhs.empty()) throw ParseError(std::string("empty production for '") + letter + "'", line_start);
    for (char c : rhs) {
      if (c < 'a' || c > 'z') throw ParseError(std::string("invalid letter '") + c + "' in production", line_start);
    }
    alphabet += letter;
    productions.emplace(letter, Word(rhs));
  }
  if (!deletion) throw ParseError("missing 'd=<int>' line", text.size());
  for (const auto& [letter, word] : productions) {
    for (char c : word) {
      if (!productions.contains(c)) {
        throw ParseError(std::string("unknown letter '") + c + "' in production of '" + letter + "'", 0);
      }
    }
  }
  if (alphabet.empty()) throw ParseError("no productions", text.size());
  return TagSystem(alphabet, productions, *deletion);
}

std::optional<Word> tag_step(const TagSystem& t, std::string_view w) {
  t.validate(w);
  if (w.size() < t.deletion()) return std::nullopt;
  Word next(w.substr(t.deletion()));
  next += t.production(w.front());
  return next;
}

RunOutcome tag_run(const TagSystem& t, std::string_view w, std::size_t max_steps) {
  Word current(w);
  t.validate(current);
  for (std::size_t steps = 0;; ++steps) {
    if (current.size() < t.deletion()) return Halted{current, steps};
    if (steps == max_steps) return BudgetExhausted{current};
    current = *tag_step(t, current);
  }
}

bool tag_reaches(const TagSystem& t, std::string_view from, std::string_view to, std::size_t max_steps) {
  t.validate(from);
  Word current(from);
  std::unordered_set<Word> seen{current};
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto next = tag_step(t, current);
    if (!next) return false;
    if (*next == to) return true;
    // Runs are deterministic, so a revisit means the rest of the run repeats.
    if (!seen.insert(*next).second) return false;
    current = std::move(*next);
  }
  return false;
}

}  // namespace tagforge
