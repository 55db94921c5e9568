#include "tagforge/codec.hpp"

#include <map>

#include "tagforge/error.hpp"

namespace tagforge {

namespace {

const Formula& template_var() {
  static const Formula x = Formula::var("x");
  return x;
}

// (f -> f) -> f
Formula triple(const Formula& f) { return Formula::imp(Formula::imp(f, f), f); }

// Inverse of triple().
std::optional<Formula> untriple(const Formula& g) {
  if (!g.is_imp() || !g.antecedent().is_imp()) return std::nullopt;
  Formula f = g.consequent();
  if (g.antecedent().antecedent() != f || g.antecedent().consequent() != f) return std::nullopt;
  return f;
}

}  // namespace

Formula letter_variable() {
  static const Formula p = Formula::var("p");
  return p;
}

HatTemplate::HatTemplate() : body_(template_var()) {}

HatTemplate::HatTemplate(Formula body) : body_(body) {
  auto vars = variables(body_);
  if (vars.size() != 1 || vars.front() != template_var()) {
    throw PreconditionError("hat template must have x as its only variable: " + render_formula(body_));
  }
}

bool HatTemplate::is_identity() const { return body_ == template_var(); }

Formula HatTemplate::at(const Formula& f) const {
  if (is_identity()) return f;
  Substitution s;
  s.bind(template_var(), f);
  return apply_substitution(s, body_);
}

std::optional<Formula> HatTemplate::strip(const Formula& g) const {
  if (is_identity()) return g;
  auto m = match_instance(g, body_);
  if (!m) return std::nullopt;
  return m->lookup(template_var()).value_or(template_var());
}

std::vector<HatTemplate> default_hat_candidates(std::size_t count) {
  std::vector<HatTemplate> out;
  Formula body = template_var();
  for (std::size_t i = 0; i < count; ++i) {
    out.emplace_back(body);
    body = Formula::imp(template_var(), body);
  }
  return out;
}

Formula hat_at(const HatTemplate& h, const Formula& f) { return h.at(f); }

Formula circ(const HatTemplate& h, const Formula& a, const Formula& b) {
  Formula outer = triple(h.at(b));
  return Formula::imp(outer, Formula::imp(h.at(a), outer));
}

Formula circ_general(const HatTemplate& h, const Formula& f, const Formula& a, const Formula& b) {
  if (contains_var(f, template_var())) {
    throw PreconditionError("formula F must not contain the variable x: " + render_formula(f));
  }
  Substitution all_to_hat;
  Formula hat_a = h.at(a);
  for (const Formula& v : variables(f)) all_to_hat.bind(v, hat_a);
  Formula outer = triple(h.at(b));
  return Formula::imp(outer, Formula::imp(apply_substitution(all_to_hat, f), outer));
}

Formula code_letter(const HatTemplate& h, std::size_t index) {
  if (index < 1) throw PreconditionError("letter index must be at least 1");
  const Formula& p = letter_variable();
  std::vector<Formula> parts(index + 1, p);
  return circ(h, chain(parts), p);
}

Formula dot(const HatTemplate& h, const Formula& a, const Formula& b) { return circ(h, triple(a), b); }

// ---------------------------------------------------------------------------

AlphaTree::Ptr AlphaTree::letter(std::size_t index) {
  auto t = std::make_shared<AlphaTree>();
  t->index_ = index;
  return t;
}

AlphaTree::Ptr AlphaTree::dot(Ptr left, Ptr right) {
  auto t = std::make_shared<AlphaTree>();
  t->length_ = left->length_ + right->length_;
  t->left_ = std::move(left);
  t->right_ = std::move(right);
  return t;
}

bool operator==(const AlphaTree& a, const AlphaTree& b) {
  if (&a == &b) return true;
  if (a.is_letter() || b.is_letter()) return a.is_letter() && b.is_letter() && a.index_ == b.index_;
  return a.length_ == b.length_ && *a.left_ == *b.left_ && *a.right_ == *b.right_;
}

WordCodec::WordCodec(HatTemplate hat, std::string alphabet) : hat_(std::move(hat)), alphabet_(std::move(alphabet)) {
  if (alphabet_.empty()) throw PreconditionError("codec needs a nonempty alphabet");
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (alphabet_.find(alphabet_[i], i + 1) != std::string::npos) {
      throw PreconditionError(std::string("duplicate letter '") + alphabet_[i] + "'");
    }
  }
}

AlphabeticFormula WordCodec::letter(char c) const {
  auto pos = alphabet_.find(c);
  if (pos == std::string::npos) throw PreconditionError(std::string("letter '") + c + "' outside alphabet");
  return {code_letter(hat_, pos + 1), AlphaTree::letter(pos + 1), Word(1, c)};
}

AlphabeticFormula WordCodec::join(const AlphabeticFormula& a, const AlphabeticFormula& b) const {
  return {dot(hat_, a.formula, b.formula), AlphaTree::dot(a.tree, b.tree), a.word + b.word};
}

AlphabeticFormula WordCodec::encode(const AlphaTree::Ptr& tree) const {
  if (tree->is_letter()) {
    if (tree->index() < 1 || tree->index() > alphabet_.size()) {
      throw PreconditionError("letter index out of range");
    }
    return letter(alphabet_[tree->index() - 1]);
  }
  return join(encode(tree->left()), encode(tree->right()));
}

AlphabeticFormula WordCodec::right_comb(std::string_view w) const {
  if (w.empty()) throw PreconditionError("cannot encode the empty word");
  AlphabeticFormula result = letter(w.back());
  for (auto it = w.rbegin() + 1; it != w.rend(); ++it) result = join(letter(*it), result);
  return result;
}

WordCode WordCodec::code_word(std::string_view w) const {
  if (w.empty()) throw PreconditionError("cannot encode the empty word");
  const std::size_t n = w.size();
  // table[i][len] = all bracketings of w.substr(i, len)
  std::vector<std::vector<std::vector<AlphabeticFormula>>> table(n, std::vector<std::vector<AlphabeticFormula>>(n + 1));
  for (std::size_t i = 0; i < n; ++i) table[i][1] = {letter(w[i])};
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      auto& cell = table[i][len];
      for (std::size_t k = 1; k < len; ++k) {
        for (const auto& left : table[i][k]) {
          for (const auto& right : table[i + k][len - k]) cell.push_back(join(left, right));
        }
      }
    }
  }
  return {Word(w), std::move(table[0][n])};
}

Word WordCodec::word_of(const AlphaTree& tree) const {
  if (tree.is_letter()) return Word(1, alphabet_.at(tree.index() - 1));
  return word_of(*tree.left()) + word_of(*tree.right());
}

namespace {

struct Decoded {
  AlphaTree::Ptr tree;
  Formula letter_value;
};

std::optional<Decoded> decode_rec(const HatTemplate& h, std::size_t alphabet_size, const Formula& f) {
  // f = P -> (a^ -> P) with P = (b^ -> b^) -> b^
  if (!f.is_imp() || !f.consequent().is_imp()) return std::nullopt;
  Formula outer = f.antecedent();
  if (f.consequent().consequent() != outer) return std::nullopt;
  auto hat_b = untriple(outer);
  if (!hat_b) return std::nullopt;
  auto b = h.strip(*hat_b);
  auto a = h.strip(f.consequent().antecedent());
  if (!b || !a) return std::nullopt;

  // A dot has left part (A -> A) -> A; a letter code's left part is a chain
  // of its letter value and can never take that shape.
  if (auto left = untriple(*a)) {
    auto l = decode_rec(h, alphabet_size, *left);
    if (!l) return std::nullopt;
    auto r = decode_rec(h, alphabet_size, *b);
    if (!r || r->letter_value != l->letter_value) return std::nullopt;
    return Decoded{AlphaTree::dot(l->tree, r->tree), l->letter_value};
  }

  const Formula& value = *b;
  Formula g = *a;
  std::size_t index = 0;
  while (g != value) {
    if (!g.is_imp() || g.antecedent() != value) return std::nullopt;
    g = g.consequent();
    if (++index > alphabet_size) return std::nullopt;
  }
  if (index < 1) return std::nullopt;
  return Decoded{AlphaTree::letter(index), value};
}

}  // namespace

std::optional<InstanceDecoding> WordCodec::decode_instance(const Formula& f) const {
  auto d = decode_rec(hat_, alphabet_.size(), f);
  if (!d) return std::nullopt;
  return InstanceDecoding{encode(d->tree), d->letter_value};
}

std::optional<AlphabeticFormula> WordCodec::decode(const Formula& f) const {
  auto d = decode_instance(f);
  if (!d || d->letter_value != letter_variable()) return std::nullopt;
  return d->alphabetic;
}

HatTemplate choose_hat(const Calculus& p0, const std::vector<HatTemplate>& candidates) {
  if (candidates.empty()) throw PreconditionError("no hat template candidates given");
  const Formula x = Formula::var("x");
  const Formula y = Formula::var("y");
  const Formula z = Formula::var("z");
  for (const HatTemplate& h : candidates) {
    Formula pattern = circ(h, x, y);
    Formula implied = Formula::imp(pattern, z);
    bool clash = false;
    for (const Formula& axiom : p0.axioms) {
      if (match_instance(axiom, pattern) || match_instance(axiom, implied)) {
        clash = true;
        break;
      }
    }
    if (!clash) return h;
  }
  throw PreconditionError("every hat template candidate conflicts with an axiom of " + p0.label);
}

std::size_t catalan(std::size_t n) {
  std::size_t c = 1;
  for (std::size_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

}  // namespace tagforge
