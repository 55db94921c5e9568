#include "tagforge/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "tagforge/error.hpp"

namespace tagforge {

namespace detail {

struct Node {
  const Node* lhs;           // nullptr for variables
  const Node* rhs;
  const std::string* name;   // variables only
  std::uint64_t hash;
  std::uint64_t size;
  std::uint32_t height;
};

}  // namespace detail

using detail::Node;

namespace {

constexpr std::size_t kMaxRenderSize = std::size_t{1} << 26;
constexpr std::size_t kMaxParseDepth = 4096;

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix(h);
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

struct PairKey {
  const Node* a;
  const Node* b;
  bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const {
    auto x = reinterpret_cast<std::uintptr_t>(k.a);
    auto y = reinterpret_cast<std::uintptr_t>(k.b);
    return static_cast<std::size_t>(mix(x * 0x9e3779b97f4a7c15ULL ^ y));
  }
};

// Process-wide hash-consing store. Nodes live for the whole process and
// are never mutated after construction, so readers need no lock.
class TermStore {
 public:
  static TermStore& instance() {
    static TermStore store;
    return store;
  }

  const Node* var(std::string_view name) {
    std::lock_guard lock(mutex_);
    if (auto it = vars_.find(std::string(name)); it != vars_.end()) return it->second;
    const std::string& stored = names_.emplace_back(name);
    const Node& n = nodes_.emplace_back(Node{nullptr, nullptr, &stored, hash_name(name), 1, 0});
    vars_.emplace(stored, &n);
    return &n;
  }

  const Node* imp(const Node* lhs, const Node* rhs) {
    std::lock_guard lock(mutex_);
    PairKey key{lhs, rhs};
    if (auto it = imps_.find(key); it != imps_.end()) return it->second;
    std::uint64_t h = mix(lhs->hash * 31 + 0x51ed27ULL) ^ mix(rhs->hash + 0x9e3779b97f4a7c15ULL);
    const Node& n = nodes_.emplace_back(Node{lhs, rhs, nullptr, h,
                                             saturating_add(saturating_add(lhs->size, rhs->size), 1),
                                             std::max(lhs->height, rhs->height) + 1});
    imps_.emplace(key, &n);
    return &n;
  }

 private:
  std::mutex mutex_;
  std::deque<Node> nodes_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, const Node*> vars_;
  std::unordered_map<PairKey, const Node*, PairKeyHash> imps_;
};

}  // namespace

Formula from_node(const Node* node) { return Formula(node); }

Formula::Formula() : node_(TermStore::instance().var("x")) {}

Formula Formula::var(std::string_view name) { return Formula(TermStore::instance().var(name)); }

Formula Formula::imp(const Formula& antecedent, const Formula& consequent) {
  return Formula(TermStore::instance().imp(antecedent.node_, consequent.node_));
}

bool Formula::is_var() const { return node_->lhs == nullptr; }
Formula Formula::antecedent() const { return Formula(node_->lhs); }
Formula Formula::consequent() const { return Formula(node_->rhs); }
const std::string& Formula::name() const { return *node_->name; }
std::uint64_t Formula::size() const { return node_->size; }
std::uint32_t Formula::height() const { return node_->height; }
std::size_t Formula::hash() const { return static_cast<std::size_t>(node_->hash); }

Formula chain(const std::vector<Formula>& parts) {
  if (parts.empty()) throw PreconditionError("chain of zero formulas");
  Formula result = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) result = Formula::imp(*it, result);
  return result;
}

std::strong_ordering structural_compare(const Formula& a, const Formula& b) {
  const Node* x = a.node();
  const Node* y = b.node();
  if (x == y) return std::strong_ordering::equal;
  if (auto c = x->size <=> y->size; c != 0) return c;
  // Distinct interned nodes differ structurally, so exactly one child
  // comparison below is non-equal and the walk follows a single path.
  while (x != y) {
    if (x->lhs == nullptr || y->lhs == nullptr) {
      if (x->lhs == nullptr && y->lhs == nullptr) return *x->name <=> *y->name;
      return x->lhs == nullptr ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (x->lhs != y->lhs) {
      if (auto c = x->lhs->size <=> y->lhs->size; c != 0) return c;
      x = x->lhs;
      y = y->lhs;
    } else {
      x = x->rhs;
      y = y->rhs;
    }
  }
  return std::strong_ordering::equal;
}

namespace {

void collect_vars(const Node* n, std::unordered_set<const Node*>& seen, std::vector<Formula>& out) {
  if (!seen.insert(n).second) return;
  if (n->lhs == nullptr) {
    out.push_back(from_node(n));
    return;
  }
  collect_vars(n->lhs, seen, out);
  collect_vars(n->rhs, seen, out);
}

}  // namespace

std::vector<Formula> variables(const Formula& f) {
  std::unordered_set<const Node*> seen;
  std::vector<Formula> out;
  collect_vars(f.node(), seen, out);
  return out;
}

bool contains_var(const Formula& f, const Formula& var) {
  auto vs = variables(f);
  return std::find(vs.begin(), vs.end(), var) != vs.end();
}

// ---------------------------------------------------------------------------
// Text form

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = formula(0);
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool arrow_ahead() {
    skip_ws();
    return text_.substr(pos_, 2) == "->";
  }

  Formula formula(std::size_t depth) {
    if (depth > kMaxParseDepth) throw ParseError("nesting too deep", pos_);
    std::vector<Formula> parts{atom(depth)};
    while (arrow_ahead()) {
      pos_ += 2;
      parts.push_back(atom(depth));
    }
    return chain(parts);
  }

  Formula atom(std::size_t depth) {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula f = formula(depth + 1);
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return f;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_++;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if ((d >= 'a' && d <= 'z') || (d >= '0' && d <= '9') || d == '_') {
          ++pos_;
        } else {
          break;
        }
      }
      return Formula::var(text_.substr(start, pos_ - start));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_into(const Node* n, std::string& out) {
  while (n->lhs != nullptr) {
    if (n->lhs->lhs != nullptr) {
      out += '(';
      render_into(n->lhs, out);
      out += ')';
    } else {
      out += *n->lhs->name;
    }
    out += " -> ";
    n = n->rhs;
  }
  out += *n->name;
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string render_formula(const Formula& f) {
  if (f.size() > kMaxRenderSize) {
    throw Error("formula too large to render (" + std::to_string(f.size()) + " nodes)");
  }
  std::string out;
  render_into(f.node(), out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

void Substitution::bind(const Formula& var, const Formula& value) {
  if (!var.is_var()) throw PreconditionError("substitution key must be a variable");
  if (var == value) {
    bindings_.erase(var.name());
    return;
  }
  bindings_.insert_or_assign(var.name(), value);
}

std::optional<Formula> Substitution::lookup(const Formula& var) const {
  if (!var.is_var()) return std::nullopt;
  if (auto it = bindings_.find(var.name()); it != bindings_.end()) return it->second;
  return std::nullopt;
}

namespace {

using NodeMap = std::unordered_map<const Node*, const Node*>;

const Node* apply_rec(const Node* n, NodeMap& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  const Node* result = n;
  if (n->lhs != nullptr) {
    const Node* l = apply_rec(n->lhs, memo);
    const Node* r = apply_rec(n->rhs, memo);
    if (l != n->lhs || r != n->rhs) result = Formula::imp(from_node(l), from_node(r)).node();
  }
  memo.emplace(n, result);
  return result;
}

}  // namespace

Formula apply_substitution(const Substitution& s, const Formula& f) {
  if (s.empty()) return f;
  NodeMap memo;
  for (const auto& [name, value] : s.bindings()) memo.emplace(Formula::var(name).node(), value.node());
  return from_node(apply_rec(f.node(), memo));
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
  Substitution result;
  for (const auto& [name, value] : inner.bindings()) result.bind(name, apply_substitution(outer, value));
  for (const auto& [name, value] : outer.bindings()) {
    if (!inner.bindings().contains(name)) result.bind(name, value);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Unification: union-find over interned nodes, occurs check by cycle
// detection on the class graph afterwards.

namespace {

class Unifier {
 public:
  bool unify(const Node* a, const Node* b) {
    std::vector<PairKey> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      const Node* rx = find(x);
      const Node* ry = find(y);
      if (rx == ry) continue;
      bool vx = rx->lhs == nullptr;
      bool vy = ry->lhs == nullptr;
      if (vx) {
        parent_[rx] = ry;
      } else if (vy) {
        parent_[ry] = rx;
      } else {
        parent_[ry] = rx;
        work.push_back({rx->rhs, ry->rhs});
        work.push_back({rx->lhs, ry->lhs});
      }
    }
    return true;
  }

  // False when some class would have to contain itself.
  bool acyclic(const Node* start) {
    enum Color : char { kWhite, kGrey, kBlack };
    std::unordered_map<const Node*, Color> color;
    // Iterative DFS: solved terms can be much deeper than the inputs.
    std::vector<std::pair<const Node*, bool>> stack{{find(start), false}};
    while (!stack.empty()) {
      auto [n, expanded] = stack.back();
      if (expanded) {
        color[n] = kBlack;
        stack.pop_back();
        continue;
      }
      Color& c = color[n];
      if (c == kBlack) {
        stack.pop_back();
        continue;
      }
      c = kGrey;
      stack.back().second = true;
      if (n->lhs == nullptr) continue;
      for (const Node* child : {find(n->rhs), find(n->lhs)}) {
        auto it = color.find(child);
        if (it == color.end() || it->second == kWhite) {
          stack.emplace_back(child, false);
        } else if (it->second == kGrey) {
          return false;
        }
      }
    }
    return true;
  }

  const Node* find(const Node* n) {
    const Node* root = n;
    for (auto it = parent_.find(root); it != parent_.end(); it = parent_.find(root)) root = it->second;
    while (n != root) {
      auto it = parent_.find(n);
      const Node* next = it->second;
      it->second = root;
      n = next;
    }
    return root;
  }

  const Node* resolve(const Node* root, const std::unordered_map<const Node*, const Node*>& rep) {
    if (auto it = resolved_.find(root); it != resolved_.end()) return it->second;
    const Node* result;
    if (root->lhs == nullptr) {
      result = rep.at(root);
    } else {
      const Node* l = resolve(find(root->lhs), rep);
      const Node* r = resolve(find(root->rhs), rep);
      result = (l == root->lhs && r == root->rhs) ? root : Formula::imp(from_node(l), from_node(r)).node();
    }
    resolved_.emplace(root, result);
    return result;
  }

 private:
  NodeMap parent_;
  NodeMap resolved_;
};

}  // namespace

std::optional<Substitution> unify(const Formula& a, const Formula& b) {
  Unifier u;
  u.unify(a.node(), b.node());
  if (!u.acyclic(a.node()) || !u.acyclic(b.node())) return std::nullopt;

  std::vector<Formula> vars = variables(a);
  for (const Formula& v : variables(b)) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  // Unbound classes are represented by their alphabetically smallest variable.
  std::unordered_map<const Node*, const Node*> rep;
  for (const Formula& v : vars) {
    const Node* root = u.find(v.node());
    if (root->lhs != nullptr) continue;
    auto [it, inserted] = rep.emplace(root, v.node());
    if (!inserted && v.name() < *it->second->name) it->second = v.node();
  }
  Substitution mgu;
  for (const Formula& v : vars) mgu.bind(v, from_node(u.resolve(u.find(v.node()), rep)));
  return mgu;
}

std::optional<ApartUnifier> unify_apart(const Formula& a, const Formula& b) {
  ApartUnifier result;
  result.renaming = rename_apart(b, variables(a));
  auto mgu = unify(a, apply_substitution(result.renaming, b));
  if (!mgu) return std::nullopt;
  result.mgu = std::move(*mgu);
  return result;
}

std::optional<Substitution> match_instance(const Formula& candidate, const Formula& pattern) {
  NodeMap bound;
  std::unordered_set<PairKey, PairKeyHash> done;
  std::vector<PairKey> work{{pattern.node(), candidate.node()}};
  while (!work.empty()) {
    auto [p, c] = work.back();
    work.pop_back();
    if (!done.insert({p, c}).second) continue;
    if (p->lhs == nullptr) {
      auto [it, inserted] = bound.emplace(p, c);
      if (!inserted && it->second != c) return std::nullopt;
      continue;
    }
    if (c->lhs == nullptr) return std::nullopt;
    if (p->size > c->size) return std::nullopt;
    work.push_back({p->rhs, c->rhs});
    work.push_back({p->lhs, c->lhs});
  }
  Substitution s;
  for (const auto& [var, value] : bound) s.bind(from_node(var), from_node(value));
  return s;
}

Substitution canonical_renaming(const Formula& f) {
  Substitution s;
  std::size_t k = 0;
  for (const Formula& v : variables(f)) s.bind(v, Formula::var("v" + std::to_string(++k)));
  return s;
}

Formula canonical_form(const Formula& f) { return apply_substitution(canonical_renaming(f), f); }

bool alpha_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

Substitution rename_apart(const Formula& f, const std::vector<Formula>& avoid) {
  std::unordered_set<std::string> taken;
  for (const Formula& v : avoid) taken.insert(v.name());
  std::vector<Formula> own = variables(f);
  for (const Formula& v : own) taken.insert(v.name());
  Substitution s;
  std::size_t k = 0;
  for (const Formula& v : own) {
    std::string name;
    do {
      name = "v" + std::to_string(++k);
    } while (taken.contains(name));
    s.bind(v, Formula::var(name));
  }
  return s;
}

}  // namespace tagforge
