#pragma once

// Derivability under modus ponens + substitution.
//
// The set of theorems is represented up to substitution: each closure level
// keeps most-general generators produced by condensed detachment, and a
// formula is derivable at that level iff it is an instance of a generator.
// naive_closure_oracle computes the literal closure over a finite
// substitution pool so the representation can be cross-checked.

#include <cstddef>
#include <memory>
#include <optional>
#include <unordered_set>
#include <variant>
#include <vector>

#include "tagforge/calculus.hpp"
#include "tagforge/formula.hpp"

namespace tagforge {

struct Detachment {
  Formula result;
  Substitution major_subst;
  Substitution minor_subst;
};

// Renames minor apart, unifies it with the antecedent of major and returns
// the canonically renamed consequent together with the substitutions that
// witness the step.
std::optional<Detachment> condensed_detach_step(const Formula& major, const Formula& minor);
std::optional<Formula> condensed_detach(const Formula& major, const Formula& minor);

struct ClosureOptions {
  static constexpr std::size_t kDefaultGeneratorCap = 50000;

  bool subsumption = true;
  std::size_t generator_cap = kDefaultGeneratorCap;
};

struct ProofNode;

struct Generator {
  Formula formula;
  std::shared_ptr<const ProofNode> proof;
  std::size_t born = 0;

  DerivationTrace trace() const;
};

struct ClosureLevel {
  std::size_t level = 0;
  std::vector<Generator> generators;
};

// Incremental level saturation. Each advance() detaches every pair of
// current generators in which at least one member is new.
class ClosureEngine {
 public:
  explicit ClosureEngine(Calculus calculus, ClosureOptions options = {});

  const Calculus& calculus() const { return calculus_; }
  const ClosureLevel& current() const { return current_; }
  std::size_t level() const { return current_.level; }
  // True once a level added nothing; later levels are then identical.
  bool saturated() const { return saturated_; }

  // Throws BudgetExceeded when the level would exceed the generator cap.
  const ClosureLevel& advance();
  const ClosureLevel& advance_to(std::size_t n);

  // First generator (in canonical order) having `goal` as an instance.
  const Generator* find_generalization(const Formula& goal) const;

 private:
  Calculus calculus_;
  ClosureOptions options_;
  ClosureLevel current_;
  std::unordered_set<Formula> seen_;
  bool saturated_ = false;
};

ClosureLevel closure_level(const Calculus& c, std::size_t n, ClosureOptions options = {});

struct Derivable {
  DerivationTrace trace;
  std::size_t level = 0;
  Formula generator;
};

struct NotFoundWithinBudget {
  std::size_t levels_explored = 0;
};

using Verdict = std::variant<Derivable, NotFoundWithinBudget>;

Verdict derives(const Calculus& c, const Formula& goal, std::size_t depth, ClosureOptions options = {});

// Extends a trace of `derivable` to a trace of antecedent -> derivable via an
// axiom that has x -> (y -> x) as an instance. Throws PreconditionError if
// the calculus has no such axiom or the given trace does not prove
// `derivable`.
DerivationTrace derive_weakening(const Calculus& c, const Formula& derivable,
                                 const DerivationTrace& trace, const Formula& antecedent);

// Literal n-fold closure where substitutions send each variable to itself
// or to a member of `pool`. Throws BudgetExceeded past `cap` formulas.
std::vector<Formula> naive_closure_oracle(const Calculus& c, std::size_t n,
                                          const std::vector<Formula>& pool,
                                          std::size_t cap = 500000);

}  // namespace tagforge
