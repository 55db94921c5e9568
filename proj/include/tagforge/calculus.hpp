#pragma once

// Calculi and the evidence objects checked against them. The checker in
// this header is the independent kernel: it only applies substitutions and
// compares interned formulas, and never calls back into proof search.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "tagforge/formula.hpp"

namespace tagforge {

struct Calculus {
  std::string label;
  std::vector<Formula> axioms;
  // Optional group name per axiom (e.g. "T1", "R"); empty or axioms.size().
  std::vector<std::string> tags;

  void add(const Formula& axiom, const std::string& tag = {});
  // Index of the first axiom tagged `tag`, or axioms.size().
  std::size_t first_tagged(const std::string& tag) const;
  std::size_t count_tagged(const std::string& tag) const;
};

// x -> (y -> x)
Formula weakening_axiom();

// Substitution instance of axiom `axiom`.
struct AxiomStep {
  std::size_t axiom = 0;
  Substitution subst;
};

// Modus ponens on substitution instances of two earlier steps: the major
// step proves A -> B, and major_subst(A) == minor_subst(minor).
struct DetachStep {
  std::size_t major = 0;
  std::size_t minor = 0;
  Substitution major_subst;
  Substitution minor_subst;
};

struct TraceStep {
  std::variant<AxiomStep, DetachStep> rule;
  Formula result;
};

struct DerivationTrace {
  std::vector<TraceStep> steps;

  bool empty() const { return steps.empty(); }
  const Formula& conclusion() const { return steps.back().result; }
};

// Waypoints C_0..C_n with links[i] deriving a formula that has
// C_i -> C_{i+1} as an instance.
struct ChainProof {
  std::vector<Formula> waypoints;
  std::vector<DerivationTrace> links;

  static ChainProof empty_at(const Formula& start) { return ChainProof{{start}, {}}; }
  const Formula& start() const { return waypoints.front(); }
  const Formula& end() const { return waypoints.back(); }
  std::size_t length() const { return links.size(); }

  // Appends `next`, whose first waypoint must equal this chain's last.
  void append(const ChainProof& next);
};

// Validates every step and that `claimed` is an instance of the last result.
bool check_trace(const Calculus& c, const DerivationTrace& t, const Formula& claimed);

bool chain_check(const Calculus& c, const ChainProof& p);

}  // namespace tagforge
