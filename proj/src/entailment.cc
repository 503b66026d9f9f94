#include "rhodf/entailment.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace rhodf {

namespace {

struct TermPair {
  Term a, b;
  friend bool operator==(const TermPair& x, const TermPair& y) {
    return x.a == y.a && x.b == y.b;
  }
};
struct TermPairHash {
  std::size_t operator()(const TermPair& k) const noexcept {
    std::hash<Term> h;
    return h(k.a) * 0x9e3779b97f4a7c15ULL + h(k.b);
  }
};

bool Mappable(Term t) { return !t.is_star() && !t.is_vocabulary(); }

// Target-side indexes plus the backtracking state for one search.
class MapSearch {
 public:
  MapSearch(const Graph& h, const Graph& target, std::size_t budget)
      : h_(h), target_(target), budget_(budget), blanks_(h.blanks()) {
    for (const Triple& t : target) {
      by_ps_[{t.p, t.s}].push_back(t.o);
      by_po_[{t.p, t.o}].push_back(t.s);
      AddUnique(subjects_[t.p], t.s);
      AddUnique(objects_[t.p], t.o);
      if (t.s == t.o) loops_[t.p].push_back(t.s);
    }
    for (std::size_t i = 0; i < blanks_.size(); ++i) slot_.emplace(blanks_[i], i);
    uses_.resize(blanks_.size());
    for (const Triple& t : h) {
      for (Term x : {t.s, t.o}) {
        if (x.is_blank()) {
          auto& u = uses_[slot_[x]];
          if (std::find(u.begin(), u.end(), t) == u.end()) u.push_back(t);
        }
      }
    }
    assignment_.resize(blanks_.size());
  }

  MapSearchResult Run() {
    MapSearchResult r;
    for (const Triple& t : h_) {
      if (!t.s.is_blank() && !t.o.is_blank() && !target_.contains(t)) {
        r.status = MapStatus::kNone;
        return r;
      }
    }
    MapStatus s = Search(blanks_.size());
    r.status = s;
    r.nodes = nodes_;
    if (s == MapStatus::kFound) {
      for (std::size_t i = 0; i < blanks_.size(); ++i) {
        r.map.Assign(blanks_[i], *assignment_[i]);
      }
    }
    return r;
  }

 private:
  static void AddUnique(std::vector<Term>& v, Term t) {
    if (v.empty() || v.back() != t) {
      if (std::find(v.begin(), v.end(), t) == v.end()) v.push_back(t);
    }
  }

  std::optional<Term> Value(Term x) const {
    if (!x.is_blank()) return x;
    auto it = slot_.find(x);
    if (it == slot_.end()) return x;
    return assignment_[it->second];
  }

  template <typename M, typename K>
  static const std::vector<Term>& Lookup(const M& m, const K& k) {
    static const std::vector<Term> kEmpty;
    auto it = m.find(k);
    return it == m.end() ? kEmpty : it->second;
  }

  // Images for blank i consistent with the current partial assignment, in
  // the target order of the first query triple that constrains it.
  std::vector<Term> Candidates(std::size_t i) const {
    const Term b = blanks_[i];
    std::optional<std::vector<Term>> acc;
    for (const Triple& t : uses_[i]) {
      const std::vector<Term>* list;
      if (t.s == b && t.o == b) {
        list = &Lookup(loops_, t.p);
      } else if (t.s == b) {
        auto o = Value(t.o);
        list = o ? &Lookup(by_po_, TermPair{t.p, *o}) : &Lookup(subjects_, t.p);
      } else {
        auto s = Value(t.s);
        list = s ? &Lookup(by_ps_, TermPair{t.p, *s}) : &Lookup(objects_, t.p);
      }
      if (!acc) {
        acc.emplace();
        for (Term c : *list) {
          if (Mappable(c)) acc->push_back(c);
        }
      } else {
        std::unordered_set<Term> keep(list->begin(), list->end());
        acc->erase(std::remove_if(acc->begin(), acc->end(),
                                  [&](Term c) { return !keep.count(c); }),
                   acc->end());
      }
      if (acc->empty()) break;
    }
    return acc ? std::move(*acc) : std::vector<Term>{};
  }

  bool Consistent(std::size_t i) const {
    for (const Triple& t : uses_[i]) {
      auto s = Value(t.s), o = Value(t.o);
      if (s && o && !target_.contains({*s, t.p, *o})) return false;
    }
    return true;
  }

  MapStatus Search(std::size_t unassigned) {
    if (unassigned == 0) return MapStatus::kFound;
    // Most constrained blank first.
    std::size_t best = blanks_.size();
    std::vector<Term> best_candidates;
    for (std::size_t i = 0; i < blanks_.size(); ++i) {
      if (assignment_[i]) continue;
      std::vector<Term> c = Candidates(i);
      if (best == blanks_.size() || c.size() < best_candidates.size()) {
        best = i;
        best_candidates = std::move(c);
        if (best_candidates.empty()) return MapStatus::kNone;
      }
    }
    for (Term c : best_candidates) {
      if (++nodes_ > budget_) return MapStatus::kBudgetExhausted;
      assignment_[best] = c;
      if (Consistent(best)) {
        MapStatus s = Search(unassigned - 1);
        if (s != MapStatus::kNone) return s;
      }
      assignment_[best].reset();
    }
    return MapStatus::kNone;
  }

  const Graph& h_;
  const Graph& target_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Term> blanks_;
  std::unordered_map<Term, std::size_t> slot_;
  std::vector<std::vector<Triple>> uses_;
  std::vector<std::optional<Term>> assignment_;
  std::unordered_map<TermPair, std::vector<Term>, TermPairHash> by_ps_, by_po_;
  std::unordered_map<Term, std::vector<Term>> subjects_, objects_, loops_;
};

}  // namespace

MapSearchResult FindMap(const Graph& h, const Graph& target, std::size_t budget) {
  return MapSearch(h, target, budget).Run();
}

const char* OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kHolds:
      return "holds";
    case Outcome::kFails:
      return "does not hold";
    case Outcome::kUnknown:
      return "unknown (search budget exhausted)";
  }
  return "?";
}

EntailmentReport Entails(const Graph& g, const Graph& h,
                         const EntailmentOptions& options) {
  ClosureOptions co;
  co.mode = options.mode;
  co.triple_cap = options.triple_cap;
  return Entails(Closure(g, co), h, options);
}

EntailmentReport Entails(const ClosureResult& closure, const Graph& h,
                         const EntailmentOptions& options) {
  const Graph& cl = closure.closure;
  EntailmentReport report;
  if (h.ground()) {
    for (const Triple& t : h) {
      if (!cl.contains(t)) report.missing.push_back(t);
    }
    report.outcome = report.missing.empty() ? Outcome::kHolds : Outcome::kFails;
  } else {
    MapSearchResult r = FindMap(h, cl, options.search_budget);
    report.search_nodes = r.nodes;
    switch (r.status) {
      case MapStatus::kFound:
        report.outcome = Outcome::kHolds;
        report.map = r.map;
        break;
      case MapStatus::kBudgetExhausted:
        report.outcome = Outcome::kUnknown;
        break;
      case MapStatus::kNone:
        report.outcome = Outcome::kFails;
        for (const Triple& t : h) {
          if (FindMap(Graph{t}, cl, options.search_budget).status == MapStatus::kNone) {
            report.missing.push_back(t);
          }
        }
        break;
    }
  }
  if (report.holds() && options.want_proof) {
    report.proof = ExtractProof(closure, h, report.map);
  }
  return report;
}

Proof ExtractProof(const ClosureResult& closure, const Graph& h,
                   const VariableMap& mu) {
  Proof proof;
  proof.goal = h;
  proof.map = mu;
  std::unordered_set<Triple, TripleHash> done;
  // Provenance premises always come from strictly earlier rounds, so the
  // recursion terminates.
  auto visit = [&](auto&& self, const Triple& t) -> void {
    if (done.count(t)) return;
    const ProofStep* step = closure.ProvenanceOf(t);
    if (!step) {
      if (!closure.closure.contains(t)) {
        throw std::invalid_argument("ExtractProof: " + ToString(t) +
                                    " is not in the closure");
      }
      done.insert(t);
      proof.steps.push_back({RuleId::k1b, {}, t});
      return;
    }
    for (const Triple& p : step->premises) self(self, p);
    done.insert(t);
    proof.steps.push_back(*step);
  };
  std::vector<Triple> image;
  for (const Triple& t : h) {
    image.push_back(mu(t));
    visit(visit, image.back());
  }
  if (!h.ground()) {
    proof.steps.push_back({RuleId::k1a, image, *h.begin()});
  }
  return proof;
}

bool VerifyProof(const Graph& g, const Proof& proof, Mode mode,
                 std::string* error) {
  auto fail = [&](std::size_t i, const std::string& why) {
    if (error) *error = "step " + std::to_string(i + 1) + ": " + why;
    return false;
  };
  GraphBuilder state;
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const ProofStep& s = proof.steps[i];
    for (const Triple& p : s.premises) {
      if (!state.contains(p)) return fail(i, "premise " + ToString(p) + " not yet derived");
    }
    if (s.rule == RuleId::k1b) {
      if (!g.contains(s.conclusion)) return fail(i, "1b conclusion not in the input graph");
      state.Add(s.conclusion);
      continue;
    }
    if (s.rule == RuleId::k1a) {
      if (i + 1 != proof.steps.size()) return fail(i, "1a is not the last step");
      for (const Triple& t : proof.goal) {
        if (!state.contains(proof.map(t))) {
          return fail(i, "image of " + ToString(t) + " not derived");
        }
      }
      return true;
    }
    bool star_2b = s.rule == RuleId::k2d || s.rule == RuleId::k2e;
    if (mode == Mode::kRdf && !IsRdfRule(s.rule)) {
      return fail(i, std::string("rule ") + std::string(RuleName(s.rule)) +
                         " is not a rho-df rule");
    }
    bool ok = false;
    if (s.rule == RuleId::k6c || s.rule == RuleId::k7c) {
      // (A ⊥ A) plus the triple that makes B a class (property).
      ok = !s.premises.empty() && s.premises.size() <= 2;
      if (ok) {
        const Triple& a = s.premises[0];
        Graph why = s.premises.size() == 2 ? Graph{s.premises[1]} : Graph{};
        Domains d = RecognizeDomains(why);
        bool in_range = s.rule == RuleId::k6c ? d.IsClass(s.conclusion.o)
                                              : d.IsProperty(s.conclusion.o);
        ok = a.s == a.o && a.p == s.conclusion.p && a.s == s.conclusion.s &&
             a.p == (s.rule == RuleId::k6c ? vocab::kDisjC : vocab::kDisjP) &&
             in_range;
      }
    } else {
      GraphBuilder pb;
      for (const Triple& p : s.premises) pb.Add(p);
      Graph premises = std::move(pb).Build();
      Domains d = RecognizeDomains(premises);
      std::vector<RuleId> try_rules = {s.rule};
      if (s.rule == RuleId::k2b || star_2b) {
        try_rules = {RuleId::k2b, RuleId::k2d, RuleId::k2e};
      }
      for (RuleId r : try_rules) {
        for (const ProofStep& inst : Instantiate(r, premises, d)) {
          if (inst.conclusion == s.conclusion) ok = true;
        }
      }
    }
    if (!ok) {
      return fail(i, ToString(s.conclusion) + " does not follow by rule " +
                         std::string(RuleName(s.rule)));
    }
    state.Add(s.conclusion);
  }
  for (const Triple& t : proof.goal) {
    if (!state.contains(t)) {
      return fail(proof.steps.size(), "goal " + ToString(t) + " not derived");
    }
  }
  return true;
}

std::string FormatProof(const Proof& proof) {
  std::unordered_map<Triple, std::size_t, TripleHash> number;
  std::vector<std::string> left;
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const ProofStep& s = proof.steps[i];
    std::string text = "(" + std::to_string(i + 1) + ") ";
    if (s.rule == RuleId::k1a) {
      bool first = true;
      for (const Triple& t : proof.goal) {
        if (!first) text += " ";
        text += ToString(t);
        first = false;
      }
    } else {
      text += ToString(s.conclusion);
      number.emplace(s.conclusion, i + 1);
    }
    left.push_back(std::move(text));
  }
  std::size_t width = 0;
  for (const auto& l : left) width = std::max(width, l.size());
  std::string out;
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const ProofStep& s = proof.steps[i];
    out += left[i];
    out.append(width - left[i].size() + 3, ' ');
    out += "Rule (";
    out += RuleName(s.rule);
    out += ")";
    for (std::size_t k = 0; k < s.premises.size(); ++k) {
      out += k == 0 ? ": " : ", ";
      out += "(" + std::to_string(number.at(s.premises[k])) + ")";
    }
    out += '\n';
  }
  if (!proof.map.empty()) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [b, v] : proof.map.assignment()) {
      pairs.push_back({ToString(b), ToString(v)});
    }
    std::sort(pairs.begin(), pairs.end());
    out += "map:";
    for (const auto& [b, v] : pairs) out += " " + b + " -> " + v;
    out += '\n';
  }
  return out;
}

}  // namespace rhodf
