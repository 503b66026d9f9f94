// Four-valued ρdf⊥¬ interpretations, a brute-force model checker and the
// canonical model of a graph.
//
// Negative extensions are not stored: 〚p〛−P is 〚¬p〛+P and 〚c〛−C is 〚¬c〛+C,
// so interpretation items 6 and 7 hold by construction.

#ifndef RHODF_SEMANTICS_H_
#define RHODF_SEMANTICS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rhodf/graph.h"
#include "rhodf/reasoner.h"

namespace rhodf {

using Element = std::uint32_t;
using ElementPair = std::pair<Element, Element>;

enum class Side { kUp, kDown };

// First (kUp) or second (kDown) components.
std::set<Element> Project(const std::set<ElementPair>& ext, Side side);

class Interpretation {
 public:
  // Elements come in complement pairs: interning "x" also creates "!x" and
  // interning "!x" also creates "x".
  Element Intern(std::string_view name);
  std::optional<Element> Find(std::string_view name) const;
  const std::string& Name(Element e) const { return names_[e]; }
  static constexpr Element Complement(Element e) { return e ^ 1u; }
  std::size_t element_count() const { return names_.size(); }

  enum Domain { kR, kP, kC, kL };
  static constexpr int kDomainCount = 4;
  // Membership only; closure under complement is the caller's business
  // (and an invariant the checker reports on).
  bool Add(Domain d, Element e);
  bool In(Domain d, Element e) const {
    return e < dom_[d].size() && dom_[d][e];
  }
  std::vector<Element> Members(Domain d) const;

  // 〚p〛+P and 〚c〛+C.
  bool AddPair(Element p, Element s, Element o);
  bool HasPair(Element p, Element s, Element o) const;
  const std::set<ElementPair>& Pairs(Element p) const;
  bool AddMember(Element c, Element x);
  bool HasMember(Element c, Element x) const;
  const std::set<Element>& Extension(Element c) const;
  const std::map<Element, std::set<ElementPair>>& property_extensions() const {
    return pairs_;
  }
  const std::map<Element, std::set<Element>>& class_extensions() const {
    return members_;
  }

  // 〚t〛 for non-star terms. An explicit entry wins; otherwise a negation
  // denotes the complement of its base's denotation and any other term
  // denotes the element named ToString(t), if there is one.
  void Denote(Term t, Element e) { denote_[t] = e; }
  std::optional<Element> Denotation(Term t) const;
  const std::unordered_map<Term, Element>& explicit_denotations() const {
    return denote_;
  }

 private:
  // Bit rows back the membership tests; the sets give ordered iteration.
  struct Bits {
    std::vector<std::vector<std::uint64_t>> rows;
    bool Set(Element r, Element c);
    bool Test(Element r, Element c) const {
      return r < rows.size() && c / 64 < rows[r].size() &&
             (rows[r][c / 64] >> (c % 64) & 1);
    }
  };

  std::vector<std::string> names_;
  std::unordered_map<std::string, Element> index_;
  std::vector<bool> dom_[kDomainCount];
  std::map<Element, std::set<ElementPair>> pairs_;
  std::vector<Bits> pair_bits_;  // by p: s -> o
  std::map<Element, std::set<Element>> members_;
  Bits member_bits_;  // c -> x
  std::unordered_map<Term, Element> denote_;
};

// Line format, one statement per line, `#` comments:
//   R e | P e | C e | L e    domain membership (the complement is added too)
//   P+ p s o                  (s, o) ∈ 〚p〛+P
//   C+ c x                    x ∈ 〚c〛+C
//   I t e                     〚t〛 = e, t in graph syntax
// Element names are whitespace-free tokens; "!e" names e's complement.
class InterpretationFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
Interpretation ParseInterpretation(std::string_view text);
// Sorted, and stable under a parse round trip.
std::string SerializeInterpretation(const Interpretation& i);

// A failed condition, e.g. "Disjointness I.3.Symmetry" with the elements
// that witness it. Interpretation invariants use "Interpretation.<item>".
struct ConditionViolation {
  std::string condition;
  std::vector<Element> elements;
};

struct SatisfactionReport {
  bool satisfied = true;
  std::vector<ConditionViolation> violations;
};

std::string FormatViolation(const Interpretation& i,
                            const ConditionViolation& v);

// Checks interpretations against the model conditions by quantifying over
// the finite domains. Conditions that do not mention the graph are
// evaluated once, at construction.
class ModelChecker {
 public:
  explicit ModelChecker(const Interpretation& i);

  // Undenoted blanks of g are existential: if some assignment into ΔR
  // satisfies the Simple conditions it is used, otherwise the violations
  // are those of a default assignment.
  SatisfactionReport Check(const Graph& g) const;
  bool Satisfies(const Graph& g) const { return Check(g).satisfied; }
  const SatisfactionReport& graph_independent() const { return fixed_; }

 private:
  const Interpretation& i_;
  SatisfactionReport fixed_;
};

SatisfactionReport CheckModel(const Interpretation& i, const Graph& g);

struct CanonicalModelOptions {
  Mode mode = Mode::kFull;
  std::optional<std::size_t> triple_cap;
  // Extend the construction to the least model above it. Without this the
  // result is the bare construction over the closure, which need not be a
  // model (see README).
  bool complete = true;
};

struct CanonicalModel {
  Interpretation model;
  // Facts added by completion (domain memberships and extension entries).
  std::size_t completion_facts = 0;
};

// Throws ResourceLimitError from the closure.
CanonicalModel BuildCanonicalModel(const Graph& g,
                                   const CanonicalModelOptions& options = {});

// Least model of g with denotation the identity over uni(g), the ρdf⊥
// vocabulary and their complements. Built by saturating the model
// conditions only; no deductive rule is involved.
Interpretation LeastModel(const Graph& g);

struct Satisfiability {
  bool satisfiable = false;
  Interpretation witness;
};

// The completed canonical model, checked against g.
Satisfiability IsSatisfiable(const Graph& g);

}  // namespace rhodf

#endif  // RHODF_SEMANTICS_H_
