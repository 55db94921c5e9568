#pragma once

// JSON forms of calculi, traces, chains, codes, bundles and reports.
// Formulas are stored as text in the parser's syntax.

#include <string>

#include <json.hpp>

#include "tagforge/calculus.hpp"
#include "tagforge/codec.hpp"
#include "tagforge/lemmas.hpp"
#include "tagforge/reduction.hpp"

namespace tagforge {

using Json = nlohmann::json;

Json substitution_to_json(const Substitution& s);
Substitution substitution_from_json(const Json& j);

// {"label": "...", "axioms": ["...", ...]}
Json calculus_to_json(const Calculus& c);
// Accepts the calculus form, or a bundle (groups concatenated in
// T1, T2, R, H, input order).
Calculus calculus_from_json(const Json& j);

// {"calculus": {...}, "steps": [...], "claimed": "..."}; each step has
// "kind" ("axiom" | "detach"), its references and substitutions, and
// "result".
Json trace_to_json(const Calculus& c, const DerivationTrace& t, const Formula& claimed);
DerivationTrace trace_from_json(const Json& j);

// {"waypoints": [...], "links": [[step...], ...]}
Json chain_to_json(const ChainProof& p);
ChainProof chain_from_json(const Json& j);

// {"word", "hat", "alphabet", "members"}
Json word_code_to_json(const WordCode& code, const HatTemplate& h, const std::string& alphabet);

// {"T1": [...], "T2": [...], "R": [...], "H": [...], "input": [...],
//  "hat", "tag_file", "p0"}
Json bundle_to_json(const ReductionBundle& b, const std::string& tag_file);

// One report; witness lists the files evidence was written to, if any.
Json report_to_json(const LemmaReport& r, const std::vector<std::string>& witness = {});

}  // namespace tagforge
