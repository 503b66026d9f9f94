#include "rhodf/cli.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rhodf/entailment.h"
#include "rhodf/generators.h"
#include "rhodf/parser.h"
#include "rhodf/reasoner.h"
#include "rhodf/semantics.h"

namespace rhodf {
namespace {

struct Config {
  std::string mode = "full";
  std::size_t triple_cap = 0;  // 0: default
  std::size_t search_budget = kDefaultSearchBudget;
  bool trace = false;
  bool proof = false;
  bool literal = false;
  std::uint64_t seed = 0;
  std::string output;
  std::string interp;

  Mode reasoner_mode() const { return mode == "rdf" ? Mode::kRdf : Mode::kFull; }
  std::optional<std::size_t> cap() const {
    if (triple_cap == 0) return std::nullopt;
    return triple_cap;
  }
};

// Thrown for conditions that map to an exit code with a message.
struct Exit {
  int code;
  std::string message;
};

class Runner {
 public:
  Runner(const Config& cfg, std::istream& in, std::ostream& out, std::ostream& err)
      : cfg_(cfg), in_(in), out_(out), err_(err) {
    const char* c = std::getenv("RHODF_COLOR");
    color_ = c && std::string(c) == "1";
  }

  int Close(const std::string& input) {
    Graph g = Load(input);
    ClosureResult cl = RunClosure(g);
    std::ostringstream text;
    for (const Triple& t : SortedTriples(cl.closure)) {
      text << ToString(t);
      if (cfg_.trace) {
        const ProofStep* step = cl.ProvenanceOf(t);
        text << "  # " << (step ? RuleName(step->rule) : "1b");
        if (step) {
          for (std::size_t k = 0; k < step->premises.size(); ++k) {
            text << (k ? " ; " : " <- ") << ToString(step->premises[k]);
          }
        }
      }
      text << "\n";
    }
    Emit(text.str());
    return kExitOk;
  }

  int Entail(const std::string& gfile, const std::string& hfile) {
    Graph g = Load(gfile);
    Graph h = Load(hfile);
    EntailmentOptions o;
    o.mode = cfg_.reasoner_mode();
    o.triple_cap = cfg_.cap();
    o.search_budget = cfg_.search_budget;
    o.want_proof = cfg_.proof;
    EntailmentReport r = Guard([&] { return Entails(g, h, o); });
    std::ostringstream text;
    const char* word = OutcomeName(r.outcome);
    text << Paint(word, r.outcome == Outcome::kHolds ? "32" : r.outcome == Outcome::kFails ? "31" : "33")
         << "\n";
    if (r.holds()) {
      std::vector<std::string> lines;
      for (const auto& [b, t] : r.map.assignment()) {
        lines.push_back("  " + ToString(b) + " -> " + ToString(t) + "\n");
      }
      std::sort(lines.begin(), lines.end());
      for (const auto& l : lines) text << l;
      if (r.proof) text << FormatProof(*r.proof);
    } else if (r.outcome == Outcome::kFails) {
      for (const Triple& t : r.missing) text << "  no image: " << ToString(t) << "\n";
    } else {
      text << "  budget: " << cfg_.search_budget << " nodes\n";
    }
    Emit(text.str());
    switch (r.outcome) {
      case Outcome::kHolds: return kExitOk;
      case Outcome::kFails: return kExitNo;
      case Outcome::kUnknown: return kExitUnknown;
    }
    return kExitNo;
  }

  int Model(const std::string& input) {
    Graph g = Load(input);
    if (!cfg_.interp.empty()) {
      Interpretation i;
      try {
        i = ParseInterpretation(ReadAll(cfg_.interp));
      } catch (const InterpretationFormatError& e) {
        throw Exit{kExitUsage, cfg_.interp + ": " + e.what()};
      }
      SatisfactionReport r = CheckModel(i, g);
      std::ostringstream text;
      text << Paint(r.satisfied ? "satisfied" : "not a model", r.satisfied ? "32" : "31")
           << "\n";
      for (const auto& v : r.violations) text << "  " << FormatViolation(i, v) << "\n";
      Emit(text.str());
      return r.satisfied ? kExitOk : kExitNo;
    }
    CanonicalModelOptions o;
    o.mode = cfg_.reasoner_mode();
    o.triple_cap = cfg_.cap();
    o.complete = !cfg_.literal;
    CanonicalModel cm = Guard([&] { return BuildCanonicalModel(g, o); });
    SatisfactionReport r = CheckModel(cm.model, g);
    err_ << (r.satisfied ? "model" : "not a model") << "; completion added "
         << cm.completion_facts << " facts\n";
    Emit(SerializeInterpretation(cm.model));
    return r.satisfied ? kExitOk : kExitNo;
  }

  int Gen(const std::string& family, int n) {
    if (n < 1) throw Exit{kExitUsage, "n must be at least 1"};
    Graph g;
    if (family == "spchain") {
      g = SpChain(n);
    } else if (family == "cubic") {
      g = Cubic(n);
    } else {
      RandomGraphOptions o;
      o.triples = n;
      g = RandomGraph(o, cfg_.seed);
    }
    Emit(SerializeGraph(g));
    return kExitOk;
  }

  int Stats(const std::string& input) {
    Graph g = Load(input);
    auto t0 = std::chrono::steady_clock::now();
    ClosureResult cl = RunClosure(g);
    auto t1 = std::chrono::steady_clock::now();
    std::ostringstream text;
    text << "graph triples    " << g.size() << "\n"
         << "closure triples  " << cl.closure.size() << "\n";
    for (Term v : vocab::kAll) {
      std::size_t n = 0;
      for (const Triple& t : cl.closure) n += t.p == v;
      if (n) text << "  " << ToString(v) << std::string(15 - ToString(v).size(), ' ') << n << "\n";
    }
    text << "iterations       " << cl.stats.iterations << "\n"
         << "wall ms          "
         << std::chrono::duration<double, std::milli>(t1 - t0).count() << "\n"
         << "rule  fired  derived\n";
    for (std::size_t r = 0; r < kRuleCount; ++r) {
      if (cl.stats.fired[r] == 0) continue;
      std::string name(RuleName(static_cast<RuleId>(r)));
      text << name << std::string(6 - name.size(), ' ') << cl.stats.fired[r] << "  "
           << cl.stats.derived[r] << "\n";
    }
    Emit(text.str());
    return kExitOk;
  }

 private:
  std::string ReadAll(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
      ss << in_.rdbuf();
      return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Exit{kExitUsage, "cannot read " + path};
    ss << f.rdbuf();
    return ss.str();
  }

  Graph Load(const std::string& path) {
    ParseResult r = ParseGraph(ReadAll(path));
    if (!r.ok()) {
      std::string msg;
      for (const auto& e : r.errors) msg += path + ":" + FormatParseError(e) + "\n";
      msg.pop_back();
      throw Exit{kExitUsage, msg};
    }
    return std::move(r.graph);
  }

  template <typename F>
  auto Guard(F f) -> decltype(f()) {
    try {
      return f();
    } catch (const ResourceLimitError& e) {
      throw Exit{kExitCap, e.what()};
    }
  }

  ClosureResult RunClosure(const Graph& g) {
    ClosureOptions o;
    o.mode = cfg_.reasoner_mode();
    o.triple_cap = cfg_.cap();
    return Guard([&] { return Closure(g, o); });
  }

  std::string Paint(const std::string& s, const char* code) const {
    if (!color_) return s;
    return "\x1b[" + std::string(code) + "m" + s + "\x1b[0m";
  }

  void Emit(const std::string& text) {
    if (cfg_.output.empty() || cfg_.output == "-") {
      out_ << text;
      return;
    }
    std::ofstream f(cfg_.output, std::ios::binary);
    if (!f) throw Exit{kExitUsage, "cannot write " + cfg_.output};
    f << text;
  }

  const Config& cfg_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  bool color_ = false;
};

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Closure, entailment and models for RDFS graphs with negation "
               "and disjointness.",
               "rhodf"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--mode", cfg.mode, "rdf or full (default)")
      ->check(CLI::IsMember({"rdf", "full"}));
  app.add_option("--cap", cfg.triple_cap, "closure triple cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.search_budget, "map search node budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for `gen random`");
  app.add_option("--out", cfg.output, "write output here instead of stdout");
  app.add_flag("--trace", cfg.trace, "close: annotate triples with the deriving rule");
  app.add_flag("--proof", cfg.proof, "entail: print a derivation");
  app.add_option("--interp", cfg.interp, "model: check this interpretation instead");
  app.add_flag("--literal", cfg.literal, "model: skip completion of the canonical model");

  std::string input, hfile, family;
  int n = 0;
  auto* close = app.add_subcommand("close", "print the closure");
  close->add_option("graph", input)->required();
  auto* entail = app.add_subcommand("entail", "decide G |= H");
  entail->add_option("graph", input)->required();
  entail->add_option("query", hfile)->required();
  auto* model = app.add_subcommand("model", "canonical model, or check --interp");
  model->add_option("graph", input)->required();
  auto* gen = app.add_subcommand("gen", "generate a graph family");
  gen->add_option("family", family)->required()->check(
      CLI::IsMember({"spchain", "cubic", "random"}));
  gen->add_option("n", n)->required();
  auto* stats = app.add_subcommand("stats", "closure size and rule counts");
  stats->add_option("graph", input)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "rhodf: " << e.what() << "\n";
    return kExitUsage;
  }

  Runner run(cfg, in, out, err);
  try {
    if (*close) return run.Close(input);
    if (*entail) return run.Entail(input, hfile);
    if (*model) return run.Model(input);
    if (*gen) return run.Gen(family, n);
    if (*stats) return run.Stats(input);
  } catch (const Exit& e) {
    err << "rhodf: " << e.message << "\n";
    return e.code;
  }
  return kExitUsage;
}

}  // namespace rhodf
