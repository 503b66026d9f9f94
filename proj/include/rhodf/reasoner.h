// Forward-chaining closure for ρdf (rules 1-5) and ρdf⊥¬ (rules 1-8).

#ifndef RHODF_REASONER_H_
#define RHODF_REASONER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rhodf/graph.h"

namespace rhodf {

enum class RuleId : std::uint8_t {
  k1a, k1b,
  k2a, k2b, k2c, k2d, k2e,
  k3a, k3b, k3c, k3d, k3e,
  k4a, k4b, k4c, k4d, k4e, k4f, k4g, k4h,
  k5a, k5b,
  k6a, k6b, k6c, k6d, k6e,
  k7a, k7b, k7c, k7d, k7e,
  k8a, k8b,
};
inline constexpr std::size_t kRuleCount = 34;

// "6d" etc.
std::string_view RuleName(RuleId r);
std::optional<RuleId> ParseRuleId(std::string_view name);
// Rules of the plain ρdf calculus: 1a 1b 2a 2b 3a 3b 4a 4b 5a 5b.
bool IsRdfRule(RuleId r);
constexpr std::size_t RuleIndex(RuleId r) { return static_cast<std::size_t>(r); }

enum class Mode { kRdf, kFull };

// One rule instantiation R/R'. For 1b steps `premises` is empty and the
// conclusion is an input triple; 1a steps carry the map in the proof.
struct ProofStep {
  RuleId rule;
  std::vector<Triple> premises;
  Triple conclusion;
};

// Class and property terms of a graph (ΔC and ΔP of its canonical model),
// each closed under single negation. Vectors are in first-seen order.
struct Domains {
  std::vector<Term> class_terms;
  std::vector<Term> property_terms;
  std::unordered_set<Term> class_set;
  std::unordered_set<Term> property_set;
  // A triple that put each term in its domain (absent for the vocabulary).
  std::unordered_map<Term, Triple> class_source;
  std::unordered_map<Term, Triple> property_source;

  bool IsClass(Term t) const { return class_set.count(t) != 0; }
  bool IsProperty(Term t) const { return property_set.count(t) != 0; }
  // Records the terms that `t` makes classes / properties. Returns the
  // number of new class terms.
  std::size_t Observe(const Triple& t);
};

// Domains of g; the ρdf⊥ vocabulary is always a property.
Domains RecognizeDomains(const Graph& g);

// Every instantiation of `rule` whose premises lie in g and whose conclusion
// is well-formed and not already in g. Rules 6c/7c draw their free
// meta-variable B from `domains`; their second premise is the triple that
// makes B a class (property). rule must not be 1a/1b.
std::vector<ProofStep> Instantiate(RuleId rule, const Graph& g,
                                   const Domains& domains);

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClosureOptions {
  Mode mode = Mode::kFull;
  // Default 10·|G|³ + 1000.
  std::optional<std::size_t> triple_cap;
  std::vector<RuleId> disabled_rules;
};

std::size_t DefaultTripleCap(std::size_t graph_size);

struct ClosureStats {
  std::size_t iterations = 0;
  // Instantiations matched, including ones whose conclusion already existed.
  std::array<std::size_t, kRuleCount> fired{};
  // Conclusions that were new when derived.
  std::array<std::size_t, kRuleCount> derived{};
};

struct ClosureResult {
  Graph closure;
  // First derivation of every triple in closure \ input.
  std::unordered_map<Triple, ProofStep, TripleHash> provenance;
  Domains domains;
  ClosureStats stats;

  const ProofStep* ProvenanceOf(const Triple& t) const {
    auto it = provenance.find(t);
    return it == provenance.end() ? nullptr : &it->second;
  }
};

// Least fixpoint of {1b} ∪ rules 2-5 (rdf) or 2-8 (full). Throws
// ResourceLimitError when the closure would exceed the triple cap.
ClosureResult Closure(const Graph& g, const ClosureOptions& options = {});
inline ClosureResult Closure(const Graph& g, Mode mode) {
  ClosureOptions o;
  o.mode = mode;
  return Closure(g, o);
}

}  // namespace rhodf

#endif  // RHODF_REASONER_H_
