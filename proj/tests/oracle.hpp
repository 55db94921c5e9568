#pragma once

// Independent reference implementations used to cross-check the library.
// Nothing here calls the library's unifier, codec or tag machine; formulas
// are plain recursive trees and encodings are built as text.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tagforge/formula.hpp"

namespace oracle {

struct Tree;
using TreePtr = std::shared_ptr<const Tree>;

struct Tree {
  std::string name;  // empty for implications
  TreePtr left;
  TreePtr right;
};

inline TreePtr var(const std::string& n) { return std::make_shared<Tree>(Tree{n, nullptr, nullptr}); }
inline TreePtr imp(TreePtr a, TreePtr b) { return std::make_shared<Tree>(Tree{"", std::move(a), std::move(b)}); }

inline bool equal(const TreePtr& a, const TreePtr& b) {
  if (a->name.empty() != b->name.empty()) return false;
  if (!a->name.empty()) return a->name == b->name;
  return equal(a->left, b->left) && equal(a->right, b->right);
}

inline std::string text(const TreePtr& t) {
  if (!t->name.empty()) return t->name;
  return "(" + text(t->left) + " -> " + text(t->right) + ")";
}

inline tagforge::Formula to_formula(const TreePtr& t) {
  if (!t->name.empty()) return tagforge::Formula::var(t->name);
  return tagforge::Formula::imp(to_formula(t->left), to_formula(t->right));
}

inline TreePtr from_formula(const tagforge::Formula& f) {
  if (f.is_var()) return var(f.name());
  return imp(from_formula(f.antecedent()), from_formula(f.consequent()));
}

using Subst = std::map<std::string, TreePtr>;

inline TreePtr apply(const Subst& s, const TreePtr& t) {
  if (!t->name.empty()) {
    auto it = s.find(t->name);
    return it == s.end() ? t : it->second;
  }
  return imp(oracle::apply(s, t->left), oracle::apply(s, t->right));
}

inline bool occurs(const std::string& v, const TreePtr& t) {
  if (!t->name.empty()) return t->name == v;
  return occurs(v, t->left) || occurs(v, t->right);
}

// Robinson unification with an explicit equation stack and eager
// substitution; returns a fully applied (idempotent) unifier.
inline std::optional<Subst> unify(const TreePtr& a, const TreePtr& b) {
  Subst s;
  std::vector<std::pair<TreePtr, TreePtr>> eqs{{a, b}};
  while (!eqs.empty()) {
    auto [l, r] = eqs.back();
    eqs.pop_back();
    l = oracle::apply(s, l);
    r = oracle::apply(s, r);
    if (equal(l, r)) continue;
    if (l->name.empty() && r->name.empty()) {
      eqs.push_back({l->left, r->left});
      eqs.push_back({l->right, r->right});
      continue;
    }
    if (l->name.empty()) std::swap(l, r);
    if (occurs(l->name, r)) return std::nullopt;
    Subst one{{l->name, r}};
    for (auto& [k, v] : s) v = oracle::apply(one, v);
    s[l->name] = r;
  }
  return s;
}

inline bool match(const TreePtr& candidate, const TreePtr& pattern, Subst& s) {
  if (!pattern->name.empty()) {
    auto [it, fresh] = s.emplace(pattern->name, candidate);
    return fresh || equal(it->second, candidate);
  }
  if (!candidate->name.empty()) return false;
  return match(candidate->left, pattern->left, s) && match(candidate->right, pattern->right, s);
}

inline bool is_instance(const TreePtr& candidate, const TreePtr& pattern) {
  Subst s;
  return match(candidate, pattern, s);
}

inline bool is_instance(const tagforge::Formula& candidate, const tagforge::Formula& pattern) {
  return is_instance(from_formula(candidate), from_formula(pattern));
}

// Random formula over the given variable names with depth <= max_depth.
inline TreePtr random_tree(std::mt19937& rng, int max_depth, const std::vector<std::string>& names) {
  std::uniform_int_distribution<int> coin(0, 2);
  if (max_depth == 0 || coin(rng) == 0) {
    std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
    return var(names[pick(rng)]);
  }
  return imp(random_tree(rng, max_depth - 1, names), random_tree(rng, max_depth - 1, names));
}

// ---------------------------------------------------------------------------
// Encoding spelled out as text, with the hat template given as text in x.

inline std::string hat(const std::string& h, const std::string& f) {
  std::string out;
  for (char c : h) {
    if (c == 'x') {
      out += "(" + f + ")";
    } else {
      out += c;
    }
  }
  return "(" + out + ")";
}

inline std::string circ(const std::string& h, const std::string& a, const std::string& b) {
  const std::string hb = hat(h, b);
  const std::string pb = "((" + hb + " -> " + hb + ") -> " + hb + ")";
  return "(" + pb + " -> (" + hat(h, a) + " -> " + pb + "))";
}

inline std::string dot(const std::string& h, const std::string& a, const std::string& b) {
  return circ(h, "((" + a + " -> " + a + ") -> " + a + ")", b);
}

// Letter number i (1-based): C_i is a right chain of i + 1 copies of p.
inline std::string letter(const std::string& h, std::size_t i) {
  std::string c = "p";
  for (std::size_t k = 0; k < i; ++k) c = "(p -> " + c + ")";
  return circ(h, c, "p");
}

// Encodes a bracketed word such as "a.(c.(e.c))" (letters a..z, index =
// position in the alphabet starting at a).
inline std::string encode_bracketed(const std::string& h, const std::string& s, std::size_t& pos) {
  auto atom = [&]() {
    if (s[pos] == '(') {
      ++pos;
      std::string inner = encode_bracketed(h, s, pos);
      ++pos;  // ')'
      return inner;
    }
    return letter(h, static_cast<std::size_t>(s[pos++] - 'a' + 1));
  };
  std::string left = atom();
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::string right = encode_bracketed(h, s, pos);
    return dot(h, left, right);
  }
  return left;
}

inline std::string encode_bracketed(const std::string& h, const std::string& s) {
  std::size_t pos = 0;
  return encode_bracketed(h, s, pos);
}

// All bracketings of w, ordered by split point, left part major.
inline std::vector<std::string> bracketings(const std::string& w) {
  if (w.size() == 1) return {w};
  std::vector<std::string> out;
  for (std::size_t k = 1; k < w.size(); ++k) {
    for (const std::string& l : bracketings(w.substr(0, k))) {
      for (const std::string& r : bracketings(w.substr(k))) {
        out.push_back((l.size() > 1 ? "(" + l + ")" : l) + "." + (r.size() > 1 ? "(" + r + ")" : r));
      }
    }
  }
  return out;
}

inline std::uint64_t catalan(std::uint64_t n) {
  // C_n = binom(2n, n) / (n + 1)
  std::uint64_t c = 1;
  for (std::uint64_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

// ---------------------------------------------------------------------------
// Tag systems as plain string rewriting.

inline std::optional<std::string> tag_step(const std::map<char, std::string>& prods, std::size_t d,
                                           const std::string& w) {
  if (w.size() < d) return std::nullopt;
  return w.substr(d) + prods.at(w[0]);
}

}  // namespace oracle
