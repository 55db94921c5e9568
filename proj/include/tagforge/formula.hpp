#pragma once

// Implicational formulas over named variables.
//
// Formulas are hash-consed: every distinct tree is stored once in a
// process-wide term store, so structural equality is pointer equality and
// subtrees are shared. Alphabetic formulas grow geometrically with word
// length when viewed as trees, so every traversal here is memoized on
// nodes and runs in time proportional to the number of distinct subterms.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tagforge {

namespace detail {
struct Node;
}

class Formula {
 public:
  // Default-constructed formulas are the variable `x`.
  Formula();

  static Formula var(std::string_view name);
  static Formula imp(const Formula& antecedent, const Formula& consequent);

  bool is_var() const;
  bool is_imp() const { return !is_var(); }

  // Only valid on implications.
  Formula antecedent() const;
  Formula consequent() const;

  // Only valid on variables.
  const std::string& name() const;

  // Number of tree nodes, saturating at UINT64_MAX.
  std::uint64_t size() const;
  std::uint32_t height() const;
  std::size_t hash() const;

  const detail::Node* node() const { return node_; }

  friend bool operator==(const Formula& a, const Formula& b) { return a.node_ == b.node_; }

 private:
  explicit Formula(const detail::Node* node) : node_(node) {}
  const detail::Node* node_;

  friend Formula from_node(const detail::Node* node);
};

Formula from_node(const detail::Node* node);

// Right-nested implication chain: chain({a, b, c}) = a -> (b -> c).
Formula chain(const std::vector<Formula>& parts);

// Total order: by tree size, then antecedent-first structural comparison.
std::strong_ordering structural_compare(const Formula& a, const Formula& b);

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const {
    return structural_compare(a, b) < 0;
  }
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Variables of f in order of first occurrence (antecedent before consequent).
std::vector<Formula> variables(const Formula& f);
bool contains_var(const Formula& f, const Formula& var);

Formula parse_formula(std::string_view text);
std::string render_formula(const Formula& f);

// A finite mapping from variables to formulas, applied simultaneously.
// Bindings are kept sorted by variable name; identity bindings are dropped.
class Substitution {
 public:
  Substitution() = default;

  void bind(const Formula& var, const Formula& value);
  void bind(std::string_view name, const Formula& value) { bind(Formula::var(name), value); }

  std::optional<Formula> lookup(const Formula& var) const;
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  const std::map<std::string, Formula>& bindings() const { return bindings_; }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.bindings_ == b.bindings_;
  }

 private:
  std::map<std::string, Formula> bindings_;
};

Formula apply_substitution(const Substitution& s, const Formula& f);

// (outer . inner): applying the result equals applying inner, then outer.
Substitution compose(const Substitution& outer, const Substitution& inner);

// Most general unifier with occurs check. Variables are shared between a
// and b as written.
std::optional<Substitution> unify(const Formula& a, const Formula& b);

struct ApartUnifier {
  Substitution renaming;  // applied to b before unifying
  Substitution mgu;
};

// Unifies a with a copy of b whose variables are renamed away from a's.
std::optional<ApartUnifier> unify_apart(const Formula& a, const Formula& b);

// Returns s with s(pattern) == candidate, binding only pattern variables.
std::optional<Substitution> match_instance(const Formula& candidate, const Formula& pattern);

bool alpha_equal(const Formula& a, const Formula& b);

// Renames variables to v1, v2, ... in order of first occurrence.
Formula canonical_form(const Formula& f);
Substitution canonical_renaming(const Formula& f);

// Renames every variable of f to a fresh name not in `avoid`.
Substitution rename_apart(const Formula& f, const std::vector<Formula>& avoid);

}  // namespace tagforge

template <>
struct std::hash<tagforge::Formula> {
  std::size_t operator()(const tagforge::Formula& f) const noexcept { return f.hash(); }
};
