#include "tagforge/io.hpp"

#include "tagforge/error.hpp"

namespace tagforge {

namespace {

Formula formula_at(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) throw ParseError(std::string("missing string field '") + key + "'", 0);
  return parse_formula(j.at(key).get<std::string>());
}

std::size_t index_at(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
    throw ParseError(std::string("missing index field '") + key + "'", 0);
  }
  return j.at(key).get<std::size_t>();
}

Json steps_to_json(const DerivationTrace& t) {
  Json steps = Json::array();
  for (const TraceStep& s : t.steps) {
    Json step;
    if (const auto* a = std::get_if<AxiomStep>(&s.rule)) {
      step["kind"] = "axiom";
      step["axiom"] = a->axiom;
      step["subst"] = substitution_to_json(a->subst);
    } else {
      const auto& d = std::get<DetachStep>(s.rule);
      step["kind"] = "detach";
      step["major"] = d.major;
      step["minor"] = d.minor;
      step["major_subst"] = substitution_to_json(d.major_subst);
      step["minor_subst"] = substitution_to_json(d.minor_subst);
    }
    step["result"] = render_formula(s.result);
    steps.push_back(std::move(step));
  }
  return steps;
}

DerivationTrace steps_from_json(const Json& steps) {
  if (!steps.is_array()) throw ParseError("trace steps must be an array", 0);
  DerivationTrace t;
  for (const Json& step : steps) {
    const std::string kind = step.value("kind", "");
    Formula result = formula_at(step, "result");
    if (kind == "axiom") {
      t.steps.push_back({AxiomStep{index_at(step, "axiom"), substitution_from_json(step.value("subst", Json::object()))},
                         result});
    } else if (kind == "detach") {
      t.steps.push_back({DetachStep{index_at(step, "major"), index_at(step, "minor"),
                                    substitution_from_json(step.value("major_subst", Json::object())),
                                    substitution_from_json(step.value("minor_subst", Json::object()))},
                         result});
    } else {
      throw ParseError("unknown step kind '" + kind + "'", 0);
    }
  }
  return t;
}

const char* const kGroups[] = {"T1", "T2", "R", "H", "input"};

}  // namespace

Json substitution_to_json(const Substitution& s) {
  Json j = Json::object();
  for (const auto& [name, value] : s.bindings()) j[name] = render_formula(value);
  return j;
}

Substitution substitution_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("substitution must be an object", 0);
  Substitution s;
  for (const auto& [name, value] : j.items()) {
    if (!value.is_string()) throw ParseError("binding of '" + name + "' must be formula text", 0);
    s.bind(name, parse_formula(value.get<std::string>()));
  }
  return s;
}

Json calculus_to_json(const Calculus& c) {
  Json axioms = Json::array();
  for (const Formula& a : c.axioms) axioms.push_back(render_formula(a));
  return Json{{"label", c.label}, {"axioms", std::move(axioms)}};
}

Calculus calculus_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("calculus must be a JSON object", 0);
  Calculus c;
  if (j.contains("axioms")) {
    if (!j.at("axioms").is_array()) throw ParseError("'axioms' must be an array", 0);
    c.label = j.value("label", "");
    for (const Json& a : j.at("axioms")) {
      if (!a.is_string()) throw ParseError("axioms must be formula text", 0);
      c.add(parse_formula(a.get<std::string>()));
    }
    return c;
  }
  bool any = false;
  c.label = "P_T,P0,xi";
  for (const char* group : kGroups) {
    if (!j.contains(group)) continue;
    any = true;
    for (const Json& a : j.at(group)) {
      if (!a.is_string()) throw ParseError("axioms must be formula text", 0);
      c.add(parse_formula(a.get<std::string>()), group);
    }
  }
  if (!any) throw ParseError("neither 'axioms' nor bundle groups present", 0);
  return c;
}

Json trace_to_json(const Calculus& c, const DerivationTrace& t, const Formula& claimed) {
  return Json{{"calculus", calculus_to_json(c)}, {"steps", steps_to_json(t)}, {"claimed", render_formula(claimed)}};
}

DerivationTrace trace_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("steps")) throw ParseError("trace must be an object with 'steps'", 0);
  return steps_from_json(j.at("steps"));
}

Json chain_to_json(const ChainProof& p) {
  Json waypoints = Json::array();
  for (const Formula& w : p.waypoints) waypoints.push_back(render_formula(w));
  Json links = Json::array();
  for (const DerivationTrace& t : p.links) links.push_back(steps_to_json(t));
  return Json{{"waypoints", std::move(waypoints)}, {"links", std::move(links)}};
}

ChainProof chain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("waypoints") || !j.contains("links")) {
    throw ParseError("chain must have 'waypoints' and 'links'", 0);
  }
  ChainProof p;
  for (const Json& w : j.at("waypoints")) p.waypoints.push_back(parse_formula(w.get<std::string>()));
  for (const Json& l : j.at("links")) p.links.push_back(steps_from_json(l));
  if (p.waypoints.empty()) throw ParseError("chain needs at least one waypoint", 0);
  return p;
}

Json word_code_to_json(const WordCode& code, const HatTemplate& h, const std::string& alphabet) {
  Json members = Json::array();
  for (const AlphabeticFormula& m : code.members) members.push_back(render_formula(m.formula));
  return Json{{"word", code.word}, {"hat", render_formula(h.body())}, {"alphabet", alphabet}, {"members", members}};
}

Json bundle_to_json(const ReductionBundle& b, const std::string& tag_file) {
  Json j;
  for (const char* group : kGroups) j[group] = Json::array();
  for (std::size_t i = 0; i < b.full.axioms.size(); ++i) j[b.full.tags[i]].push_back(render_formula(b.full.axioms[i]));
  j["hat"] = render_formula(b.hat.body());
  j["tag_file"] = tag_file;
  j["p0"] = calculus_to_json(b.p0);
  j["input_word"] = b.input;
  return j;
}

Json report_to_json(const LemmaReport& r, const std::vector<std::string>& witness) {
  Json j{{"id", r.id},
         {"instance", r.instance},
         {"verdict", to_string(r.verdict)},
         {"detail", r.detail},
         {"traces", r.traces.size()},
         {"chains", r.chains.size()},
         {"revalidated", revalidate(r)},
         {"resources",
          {{"levels", r.resources.levels}, {"generators", r.resources.generators}, {"checks", r.resources.checks}}},
         {"witness", witness}};
  if (r.counterexample) j["counterexample"] = render_formula(*r.counterexample);
  return j;
}

}  // namespace tagforge
