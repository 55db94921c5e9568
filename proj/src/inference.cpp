#include "tagforge/inference.hpp"

#include <algorithm>
#include <unordered_map>

#include "tagforge/error.hpp"

namespace tagforge {

struct ProofNode {
  std::variant<AxiomStep, DetachStep> rule;  // DetachStep indices are unused here
  std::shared_ptr<const ProofNode> major;
  std::shared_ptr<const ProofNode> minor;
  Formula result;
};

namespace {

Substitution restrict_to(const Substitution& s, const std::vector<Formula>& vars) {
  Substitution out;
  for (const Formula& v : vars) {
    if (auto value = s.lookup(v)) out.bind(v, *value);
  }
  return out;
}

std::size_t flatten(const ProofNode* node, std::unordered_map<const ProofNode*, std::size_t>& index,
                    DerivationTrace& out) {
  if (auto it = index.find(node); it != index.end()) return it->second;
  TraceStep step{node->rule, node->result};
  if (auto* mp = std::get_if<DetachStep>(&step.rule)) {
    mp->major = flatten(node->major.get(), index, out);
    mp->minor = flatten(node->minor.get(), index, out);
  }
  out.steps.push_back(std::move(step));
  index.emplace(node, out.steps.size() - 1);
  return out.steps.size() - 1;
}

}  // namespace

std::optional<Detachment> condensed_detach_step(const Formula& major, const Formula& minor) {
  if (!major.is_imp()) return std::nullopt;
  std::vector<Formula> major_vars = variables(major);
  Substitution apart = rename_apart(minor, major_vars);
  auto mgu = unify(major.antecedent(), apply_substitution(apart, minor));
  if (!mgu) return std::nullopt;
  Formula consequent = apply_substitution(*mgu, major.consequent());
  Substitution canon = canonical_renaming(consequent);
  Substitution outer = compose(canon, *mgu);
  return Detachment{apply_substitution(canon, consequent), restrict_to(outer, major_vars),
                    restrict_to(compose(outer, apart), variables(minor))};
}

std::optional<Formula> condensed_detach(const Formula& major, const Formula& minor) {
  auto d = condensed_detach_step(major, minor);
  if (!d) return std::nullopt;
  return d->result;
}

DerivationTrace Generator::trace() const {
  DerivationTrace out;
  std::unordered_map<const ProofNode*, std::size_t> index;
  flatten(proof.get(), index, out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void sort_generators(std::vector<Generator>& gens) {
  std::sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
    return structural_compare(a.formula, b.formula) < 0;
  });
}

// Adds g unless an existing generator subsumes it; drops existing
// generators that g subsumes. Returns whether g was added.
bool insert_generator(std::vector<Generator>& gens, Generator g, bool subsumption) {
  if (subsumption) {
    for (const Generator& existing : gens) {
      if (match_instance(g.formula, existing.formula)) return false;
    }
    std::erase_if(gens, [&](const Generator& existing) {
      return match_instance(existing.formula, g.formula).has_value();
    });
  }
  gens.push_back(std::move(g));
  return true;
}

}  // namespace

ClosureEngine::ClosureEngine(Calculus calculus, ClosureOptions options)
    : calculus_(std::move(calculus)), options_(options) {
  for (std::size_t k = 0; k < calculus_.axioms.size(); ++k) {
    const Formula& axiom = calculus_.axioms[k];
    Substitution canon = canonical_renaming(axiom);
    Formula formula = apply_substitution(canon, axiom);
    if (!seen_.insert(formula).second) continue;
    auto node = std::make_shared<ProofNode>(ProofNode{AxiomStep{k, canon}, nullptr, nullptr, formula});
    insert_generator(current_.generators, Generator{formula, node, 0}, options_.subsumption);
  }
  sort_generators(current_.generators);
  if (current_.generators.size() > options_.generator_cap) {
    throw BudgetExceeded("generator cap " + std::to_string(options_.generator_cap) + " exceeded at level 0");
  }
}

const ClosureLevel& ClosureEngine::advance() {
  const std::size_t n = current_.level;
  if (saturated_) {
    current_.level = n + 1;
    return current_;
  }
  const std::vector<Generator> snapshot = current_.generators;
  std::vector<Generator> next = snapshot;
  bool added = false;
  for (const Generator& major : snapshot) {
    if (!major.formula.is_imp()) continue;
    for (const Generator& minor : snapshot) {
      if (major.born != n && minor.born != n) continue;
      auto d = condensed_detach_step(major.formula, minor.formula);
      if (!d || !seen_.insert(d->result).second) continue;
      auto node = std::make_shared<ProofNode>(ProofNode{
          DetachStep{0, 0, std::move(d->major_subst), std::move(d->minor_subst)}, major.proof, minor.proof,
          d->result});
      if (insert_generator(next, Generator{d->result, node, n + 1}, options_.subsumption)) {
        added = true;
        if (next.size() > options_.generator_cap) {
          throw BudgetExceeded("generator cap " + std::to_string(options_.generator_cap) + " exceeded at level " +
                               std::to_string(n + 1));
        }
      }
    }
  }
  sort_generators(next);
  current_.generators = std::move(next);
  current_.level = n + 1;
  saturated_ = !added;
  return current_;
}

const ClosureLevel& ClosureEngine::advance_to(std::size_t n) {
  while (current_.level < n) advance();
  return current_;
}

const Generator* ClosureEngine::find_generalization(const Formula& goal) const {
  for (const Generator& g : current_.generators) {
    if (match_instance(goal, g.formula)) return &g;
  }
  return nullptr;
}

ClosureLevel closure_level(const Calculus& c, std::size_t n, ClosureOptions options) {
  ClosureEngine engine(c, options);
  return engine.advance_to(n);
}

Verdict derives(const Calculus& c, const Formula& goal, std::size_t depth, ClosureOptions options) {
  ClosureEngine engine(c, options);
  for (std::size_t k = 0;; ++k) {
    if (k > 0) engine.advance();
    if (const Generator* g = engine.find_generalization(goal)) return Derivable{g->trace(), k, g->formula};
    if (k == depth || engine.saturated()) break;
  }
  return NotFoundWithinBudget{depth};
}

DerivationTrace derive_weakening(const Calculus& c, const Formula& derivable, const DerivationTrace& trace,
                                 const Formula& antecedent) {
  const Formula k = weakening_axiom();
  std::optional<std::size_t> axiom;
  Substitution to_k;
  for (std::size_t i = 0; i < c.axioms.size(); ++i) {
    if (auto m = match_instance(k, c.axioms[i])) {
      axiom = i;
      to_k = std::move(*m);
      break;
    }
  }
  if (!axiom) throw PreconditionError("calculus " + c.label + " has no axiom generalizing x -> (y -> x)");
  if (!check_trace(c, trace, derivable)) throw PreconditionError("given trace does not prove the formula");

  Substitution fill;
  fill.bind("x", derivable);
  fill.bind("y", antecedent);
  Substitution instance = compose(fill, to_k);
  // compose keeps fill's own bindings for x and y; restrict to the axiom.
  Substitution axiom_subst;
  for (const Formula& v : variables(c.axioms[*axiom])) axiom_subst.bind(v, apply_substitution(instance, v));

  DerivationTrace out = trace;
  const std::size_t minor = out.steps.size() - 1;
  Formula weakened = apply_substitution(axiom_subst, c.axioms[*axiom]);
  out.steps.push_back({AxiomStep{*axiom, axiom_subst}, weakened});
  auto to_derivable = match_instance(derivable, trace.conclusion());
  out.steps.push_back({DetachStep{minor + 1, minor, Substitution{}, *to_derivable}, weakened.consequent()});
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Formula> naive_closure_oracle(const Calculus& c, std::size_t n, const std::vector<Formula>& pool,
                                          std::size_t cap) {
  std::unordered_set<Formula> current(c.axioms.begin(), c.axioms.end());
  for (std::size_t level = 0; level < n; ++level) {
    std::unordered_set<Formula> next = current;
    auto add = [&](const Formula& f) {
      next.insert(f);
      if (next.size() > cap) throw BudgetExceeded("naive closure exceeded " + std::to_string(cap) + " formulas");
    };
    for (const Formula& f : current) {
      if (f.is_imp() && current.contains(f.antecedent())) add(f.consequent());
    }
    for (const Formula& f : current) {
      std::vector<Formula> vars = variables(f);
      // choice[i] == 0 keeps the variable, otherwise picks pool[choice - 1]
      std::vector<std::size_t> choice(vars.size(), 0);
      while (true) {
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] > pool.size()) choice[i++] = 0;
        if (i == choice.size()) break;
        Substitution s;
        for (std::size_t j = 0; j < vars.size(); ++j) {
          if (choice[j] > 0) s.bind(vars[j], pool[choice[j] - 1]);
        }
        add(apply_substitution(s, f));
      }
    }
    current = std::move(next);
  }
  std::vector<Formula> out(current.begin(), current.end());
  std::sort(out.begin(), out.end(), FormulaLess{});
  return out;
}

}  // namespace tagforge
