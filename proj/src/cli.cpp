#include "tagforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "tagforge/error.hpp"
#include "tagforge/inference.hpp"
#include "tagforge/io.hpp"
#include "tagforge/lemmas.hpp"

namespace tagforge {

namespace {

constexpr const char* kCollatzSystem = "d=2\na -> bc\nb -> a\nc -> aaa\n";
constexpr const char* kHaltingSystem = "d=2\na -> b\nb -> b\n";
constexpr std::size_t kDefaultDepth = 3;
constexpr std::size_t kDefaultMaxSteps = 1000;
// Witness files are skipped past this many formula nodes per report.
constexpr std::uint64_t kWitnessSizeLimit = 1u << 22;

struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what(), 0);
  }
}

ClosureOptions closure_options() {
  ClosureOptions o;
  if (const char* cap = std::getenv("TAGFORGE_GENERATOR_CAP")) {
    std::string text(cap);
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw UsageError("TAGFORGE_GENERATOR_CAP must be a non-negative integer");
    }
    o.generator_cap = std::stoull(text);
  }
  return o;
}

// Letters a.. up to the largest letter of w.
std::string default_alphabet(const std::string& w) {
  char top = 'a';
  for (char c : w) {
    if (c < 'a' || c > 'z') throw UsageError("word has non a-z letters; pass --alphabet");
    top = std::max(top, c);
  }
  return first_letters(static_cast<std::size_t>(top - 'a' + 1));
}

struct Config {
  std::string format = "json";
  std::string out_path;

  std::string word;
  std::string hat = "x";
  std::string alphabet;

  std::string system_path;
  std::string input;
  std::string from;
  std::string to;
  std::size_t max_steps = kDefaultMaxSteps;

  std::string p0_path;
  std::size_t hat_candidates = 8;

  std::string calculus_path;
  std::string goal;
  std::size_t depth = kDefaultDepth;
  std::string trace_path;
  std::string trace_out;

  std::string lemma;
  std::size_t alphabet_size = 0;
  std::size_t max_len = 0;
  std::string witness_dir;
};

class Runner {
 public:
  Runner(const Config& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void emit(const Json& j, const std::string& text) {
    std::string body = cfg_.format == "json" ? j.dump(2) + "\n" : text;
    if (cfg_.out_path.empty()) {
      out_ << body;
    } else {
      write_file(cfg_.out_path, body);
    }
  }

  TagSystem system(const char* fallback = nullptr) const {
    if (cfg_.system_path.empty()) {
      if (!fallback) throw UsageError("--system is required");
      return parse_tag_system(fallback);
    }
    return parse_tag_system(read_file(cfg_.system_path));
  }

  Calculus p0() const {
    if (cfg_.p0_path.empty()) return Calculus{"K", {weakening_axiom()}, {}};
    return calculus_from_json(read_json(cfg_.p0_path));
  }

  int encode() {
    const HatTemplate h = HatTemplate::parse(cfg_.hat);
    const std::string alphabet = cfg_.alphabet.empty() ? default_alphabet(cfg_.word) : cfg_.alphabet;
    const WordCodec codec(h, alphabet);
    const WordCode code = codec.code_word(cfg_.word);
    std::string text;
    for (const AlphabeticFormula& m : code.members) text += render_formula(m.formula) + "\n";
    emit(word_code_to_json(code, h, alphabet), text);
    return kExitOk;
  }

  int tag_run_cmd() {
    const TagSystem t = system();
    const RunOutcome r = tagforge::tag_run(t, cfg_.input, cfg_.max_steps);
    Json j{{"system", cfg_.system_path}, {"input", cfg_.input}, {"max_steps", cfg_.max_steps}};
    std::string text;
    if (const auto* h = std::get_if<Halted>(&r)) {
      j["outcome"] = "halted";
      j["word"] = h->word;
      j["steps"] = h->steps;
      text = "halted after " + std::to_string(h->steps) + " steps at '" + h->word + "'\n";
    } else {
      const auto& b = std::get<BudgetExhausted>(r);
      j["outcome"] = "budget-exhausted";
      j["word"] = b.word;
      text = "budget exhausted at '" + b.word + "'\n";
    }
    emit(j, text);
    return kExitOk;
  }

  int tag_reach_cmd() {
    const TagSystem t = system();
    const bool reaches = tag_reaches(t, cfg_.from, cfg_.to, cfg_.max_steps);
    emit(Json{{"system", cfg_.system_path},
              {"from", cfg_.from},
              {"to", cfg_.to},
              {"max_steps", cfg_.max_steps},
              {"reaches", reaches}},
         std::string(reaches ? "reaches" : "does not reach") + "\n");
    return kExitOk;
  }

  int reduce() {
    const TagSystem t = system();
    const ReductionBundle b = build_reduction(t, p0(), cfg_.input, default_hat_candidates(cfg_.hat_candidates));
    std::string text;
    for (std::size_t i = 0; i < b.full.axioms.size(); ++i) {
      text += b.full.tags[i] + "  " + render_formula(b.full.axioms[i]) + "\n";
    }
    emit(bundle_to_json(b, cfg_.system_path), text);
    return kExitOk;
  }

  int derive() {
    const Calculus c = calculus_from_json(read_json(cfg_.calculus_path));
    const Formula goal = parse_formula(cfg_.goal);
    const Verdict v = derives(c, goal, cfg_.depth, closure_options());
    Json j{{"calculus", c.label}, {"goal", render_formula(goal)}, {"depth", cfg_.depth}};
    std::string text;
    if (const auto* d = std::get_if<Derivable>(&v)) {
      Json trace = trace_to_json(c, d->trace, goal);
      j["verdict"] = "derivable";
      j["level"] = d->level;
      j["generator"] = render_formula(d->generator);
      j["trace"] = trace;
      if (!cfg_.trace_out.empty()) write_file(cfg_.trace_out, trace.dump(2) + "\n");
      text = "derivable at level " + std::to_string(d->level) + " via " + render_formula(d->generator) + "\n";
    } else {
      j["verdict"] = "not-found-within-budget";
      j["levels_explored"] = std::get<NotFoundWithinBudget>(v).levels_explored;
      text = "not found within " + std::to_string(cfg_.depth) + " levels\n";
    }
    emit(j, text);
    return kExitOk;
  }

  int check_trace_cmd() {
    const Json file = read_json(cfg_.trace_path);
    Calculus c;
    if (!cfg_.calculus_path.empty()) {
      c = calculus_from_json(read_json(cfg_.calculus_path));
    } else if (file.contains("calculus")) {
      c = calculus_from_json(file.at("calculus"));
    } else {
      throw UsageError("trace file has no calculus; pass --calculus");
    }
    bool valid = true;
    std::size_t traces = 0;
    std::size_t chains = 0;
    auto check_one = [&](const Json& t) {
      ++traces;
      valid = check_trace(c, trace_from_json(t), parse_formula(t.at("claimed").get<std::string>())) && valid;
    };
    if (file.contains("steps")) check_one(file);
    for (const Json& t : file.value("traces", Json::array())) check_one(t);
    for (const Json& p : file.value("chains", Json::array())) {
      ++chains;
      valid = chain_check(c, chain_from_json(p)) && valid;
    }
    emit(Json{{"valid", valid}, {"traces", traces}, {"chains", chains}}, valid ? "valid\n" : "invalid\n");
    return valid ? kExitOk : kExitDomain;
  }

  int verify() {
    const std::vector<std::string> ids = {"lemma1",     "lemma3", "corollary4", "lemma5",  "lemma6",  "lemma7",
                                          "corollary5", "corollary6", "lemma9", "lemma11", "lemma12"};
    std::vector<std::string> selected;
    if (cfg_.lemma == "all") {
      selected = ids;
    } else if (std::find(ids.begin(), ids.end(), cfg_.lemma) != ids.end()) {
      selected = {cfg_.lemma};
    } else {
      throw UsageError("unknown check '" + cfg_.lemma + "'");
    }
    if (!cfg_.witness_dir.empty()) std::filesystem::create_directories(cfg_.witness_dir);

    std::string lines;
    std::string text;
    bool any_fail = false;
    for (const std::string& id : selected) {
      for (const LemmaReport& r : run_check(id)) {
        std::vector<std::string> witness;
        if (!cfg_.witness_dir.empty()) witness = write_witness(r);
        lines += report_to_json(r, witness).dump() + "\n";
        text += r.id + " " + to_string(r.verdict) + " " + r.detail + "\n";
        any_fail = any_fail || r.verdict == LemmaVerdict::kFail || !revalidate(r);
      }
    }
    if (cfg_.format == "json") {
      if (cfg_.out_path.empty()) {
        out_ << lines;
      } else {
        write_file(cfg_.out_path, lines);
      }
    } else {
      emit(Json(), text);
    }
    return any_fail ? kExitDomain : kExitOk;
  }

 private:
  std::size_t alphabet_size(std::size_t fallback) const { return cfg_.alphabet_size ? cfg_.alphabet_size : fallback; }
  std::size_t max_len(std::size_t fallback) const { return cfg_.max_len ? cfg_.max_len : fallback; }
  std::string input(const char* fallback) const { return cfg_.input.empty() ? fallback : cfg_.input; }

  std::vector<LemmaReport> run_check(const std::string& id) const {
    const HatTemplate h = HatTemplate::parse(cfg_.hat);
    const ClosureOptions options = closure_options();
    if (id == "lemma1") {
      if (!hat_given_) {
        std::vector<LemmaReport> out;
        for (const char* hat : {"x", "x -> x", "x -> (x -> x)"}) out.push_back(check_lemma1(HatTemplate::parse(hat)));
        return out;
      }
      return {check_lemma1(h)};
    }
    if (id == "lemma3") return {check_lemma3(h, alphabet_size(3), max_len(4))};
    if (id == "corollary4") return {check_corollary4(h, alphabet_size(2), max_len(4))};
    if (id == "lemma5") return {check_code_derivability(h, alphabet_size(3), max_len(4))};
    if (id == "lemma6") return {check_lemma6(h, alphabet_size(2), max_len(5))};
    if (id == "lemma7") return {check_lemma7(system(kCollatzSystem), h, input("aaa"))};
    if (id == "corollary5") return {check_corollary5(system(kCollatzSystem), h, input("aaa"), cfg_.max_steps)};
    if (id == "corollary6") {
      Corollary6Options o;
      o.max_word_length = max_len(o.max_word_length);
      return {check_corollary6(system(kHaltingSystem), h, o)};
    }
    if (id == "lemma9") {
      return {check_production(system(kCollatzSystem), p0(), h, input("aaa"), cfg_.depth, options)};
    }
    if (id == "lemma11") return {check_halting_equivalence(system(kHaltingSystem), p0(), input("aa"), cfg_.depth, options)};
    return {check_inclusion(system(kCollatzSystem), h)};
  }

  std::vector<std::string> write_witness(const LemmaReport& r) const {
    if (r.traces.empty() && r.chains.empty()) return {};
    std::uint64_t total = 0;
    for (const TraceWitness& w : r.traces) {
      for (const TraceStep& s : w.trace.steps) total += s.result.size();
    }
    for (const ChainProof& c : r.chains) {
      for (const Formula& f : c.waypoints) total += f.size();
    }
    if (total > kWitnessSizeLimit) return {"omitted: evidence too large to render"};
    Json j{{"calculus", calculus_to_json(r.calculus)}, {"traces", Json::array()}, {"chains", Json::array()}};
    for (const TraceWitness& w : r.traces) {
      Json t = trace_to_json(r.calculus, w.trace, w.claimed);
      t.erase("calculus");
      j["traces"].push_back(std::move(t));
    }
    for (const ChainProof& c : r.chains) j["chains"].push_back(chain_to_json(c));
    std::string name = r.id;
    std::size_t k = 0;
    std::filesystem::path path;
    do {
      path = std::filesystem::path(cfg_.witness_dir) / (name + (k ? "-" + std::to_string(k) : "") + ".json");
      ++k;
    } while (used_.count(path.string()));
    used_.insert(path.string());
    write_file(path.string(), j.dump(1) + "\n");
    return {path.string()};
  }

 public:
  bool hat_given_ = false;

 private:
  const Config& cfg_;
  std::ostream& out_;
  mutable std::set<std::string> used_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Tag systems, their encoding into implicational calculi, and derivability checks."};
  app.name("tagforge");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--out", cfg.out_path, "Write output to this file instead of stdout");

  CLI::App* encode = app.add_subcommand("encode", "Print the code (all bracketings) of a word");
  encode->add_option("--word", cfg.word, "Word to encode")->required();
  encode->add_option("--hat", cfg.hat, "Hat template over x")->capture_default_str();
  encode->add_option("--alphabet", cfg.alphabet, "Alphabet letters in index order (default a..max letter)");

  CLI::App* tag = app.add_subcommand("tag", "Run tag systems");
  tag->require_subcommand(1);
  tag->fallthrough();
  CLI::App* run = tag->add_subcommand("run", "Run a tag system from an input word");
  run->add_option("--system", cfg.system_path, "Tag system file")->required()->check(CLI::ExistingFile);
  run->add_option("--input", cfg.input, "Input word")->required();
  run->add_option("--max-steps", cfg.max_steps, "Production budget")->capture_default_str();
  CLI::App* reach = tag->add_subcommand("reach", "Decide whether one word produces another within a budget");
  reach->add_option("--system", cfg.system_path, "Tag system file")->required()->check(CLI::ExistingFile);
  reach->add_option("--from", cfg.from, "Start word")->required();
  reach->add_option("--to", cfg.to, "Target word")->required();
  reach->add_option("--max-steps", cfg.max_steps, "Production budget")->capture_default_str();

  CLI::App* reduce = app.add_subcommand("reduce", "Build the calculus simulating a tag system on an input");
  reduce->add_option("--system", cfg.system_path, "Tag system file")->required()->check(CLI::ExistingFile);
  reduce->add_option("--input", cfg.input, "Input word")->required();
  reduce->add_option("--p0", cfg.p0_path, "Calculus JSON for P0 (default {x -> (y -> x)})")->check(CLI::ExistingFile);
  reduce->add_option("--hat-candidates", cfg.hat_candidates, "Number of hat templates to try")->capture_default_str();

  CLI::App* derive = app.add_subcommand("derive", "Search for a derivation by level saturation");
  derive->add_option("--calculus", cfg.calculus_path, "Calculus or bundle JSON")->required()->check(CLI::ExistingFile);
  derive->add_option("--goal", cfg.goal, "Formula to derive")->required();
  derive->add_option("--depth", cfg.depth, "Closure levels to explore")->capture_default_str();
  derive->add_option("--trace-out", cfg.trace_out, "Also write the trace JSON here");

  CLI::App* check = app.add_subcommand("check-trace", "Validate a trace or witness file");
  check->add_option("--trace", cfg.trace_path, "Trace or witness JSON")->required()->check(CLI::ExistingFile);
  check->add_option("--calculus", cfg.calculus_path, "Calculus JSON (default: the one embedded in the file)")
      ->check(CLI::ExistingFile);

  CLI::App* verify = app.add_subcommand("verify", "Run instance checks of the reduction (JSON lines)");
  verify->add_option("check", cfg.lemma,
                     "lemma1 lemma3 corollary4 lemma5 lemma6 lemma7 corollary5 corollary6 lemma9 lemma11 lemma12 | all")
      ->required();
  CLI::Option* verify_hat = verify->add_option("--hat", cfg.hat, "Hat template over x")->capture_default_str();
  verify->add_option("--alphabet", cfg.alphabet_size, "Alphabet size for sweeps");
  verify->add_option("--max-len", cfg.max_len, "Maximum word length for sweeps");
  verify->add_option("--system", cfg.system_path, "Tag system file (default: a builtin per check)")
      ->check(CLI::ExistingFile);
  verify->add_option("--p0", cfg.p0_path, "Calculus JSON for P0 (default {x -> (y -> x)})")->check(CLI::ExistingFile);
  verify->add_option("--input", cfg.input, "Input word (default: builtin per check)");
  verify->add_option("--depth", cfg.depth, "Closure depth / budget")->capture_default_str();
  verify->add_option("--max-steps", cfg.max_steps, "Production budget for run chains")->capture_default_str();
  verify->add_option("--witness-dir", cfg.witness_dir, "Write evidence files here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Runner runner(cfg, out);
    if (encode->parsed()) return runner.encode();
    if (run->parsed()) return runner.tag_run_cmd();
    if (reach->parsed()) return runner.tag_reach_cmd();
    if (reduce->parsed()) return runner.reduce();
    if (derive->parsed()) return runner.derive();
    if (check->parsed()) return runner.check_trace_cmd();
    runner.hat_given_ = verify_hat->count() > 0;
    return runner.verify();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace tagforge
