#include "tagforge/calculus.hpp"

#include <algorithm>

#include "tagforge/error.hpp"

namespace tagforge {

Formula weakening_axiom() {
  Formula x = Formula::var("x");
  return Formula::imp(x, Formula::imp(Formula::var("y"), x));
}

void Calculus::add(const Formula& axiom, const std::string& tag) {
  if (tags.size() != axioms.size()) tags.resize(axioms.size());
  axioms.push_back(axiom);
  tags.push_back(tag);
}

std::size_t Calculus::first_tagged(const std::string& tag) const {
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] == tag) return i;
  }
  return axioms.size();
}

std::size_t Calculus::count_tagged(const std::string& tag) const {
  return static_cast<std::size_t>(std::count(tags.begin(), tags.end(), tag));
}

void ChainProof::append(const ChainProof& next) {
  if (waypoints.empty()) {
    *this = next;
    return;
  }
  if (next.waypoints.empty() || next.start() != end()) {
    throw PreconditionError("chain endpoints do not meet");
  }
  waypoints.insert(waypoints.end(), next.waypoints.begin() + 1, next.waypoints.end());
  links.insert(links.end(), next.links.begin(), next.links.end());
}

namespace {

bool check_step(const Calculus& c, const DerivationTrace& t, std::size_t i) {
  const TraceStep& step = t.steps[i];
  if (const auto* ax = std::get_if<AxiomStep>(&step.rule)) {
    if (ax->axiom >= c.axioms.size()) return false;
    return apply_substitution(ax->subst, c.axioms[ax->axiom]) == step.result;
  }
  const auto& mp = std::get<DetachStep>(step.rule);
  if (mp.major >= i || mp.minor >= i) return false;
  const Formula& major = t.steps[mp.major].result;
  if (!major.is_imp()) return false;
  Formula antecedent = apply_substitution(mp.major_subst, major.antecedent());
  Formula minor = apply_substitution(mp.minor_subst, t.steps[mp.minor].result);
  if (antecedent != minor) return false;
  return apply_substitution(mp.major_subst, major.consequent()) == step.result;
}

}  // namespace

bool check_trace(const Calculus& c, const DerivationTrace& t, const Formula& claimed) {
  if (t.empty()) return false;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    if (!check_step(c, t, i)) return false;
  }
  return match_instance(claimed, t.conclusion()).has_value();
}

bool chain_check(const Calculus& c, const ChainProof& p) {
  if (p.waypoints.empty() || p.links.size() + 1 != p.waypoints.size()) return false;
  for (std::size_t i = 0; i < p.links.size(); ++i) {
    if (!check_trace(c, p.links[i], Formula::imp(p.waypoints[i], p.waypoints[i + 1]))) return false;
  }
  return true;
}

}  // namespace tagforge
