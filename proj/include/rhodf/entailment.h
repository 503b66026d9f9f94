// G ⊨ H via closure plus a blank-node map μ with μ(H) ⊆ Cl(G), and
// proofs in which the instantiation rule 1a appears once, last.

#ifndef RHODF_ENTAILMENT_H_
#define RHODF_ENTAILMENT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rhodf/graph.h"
#include "rhodf/reasoner.h"

namespace rhodf {

inline constexpr std::size_t kDefaultSearchBudget = 1'000'000;

enum class MapStatus { kFound, kNone, kBudgetExhausted };

struct MapSearchResult {
  MapStatus status = MapStatus::kNone;
  VariableMap map;  // set when kFound
  std::size_t nodes = 0;
};

// Backtracking search for μ with μ(h) ⊆ target. Blanks of `target` are
// constants. Complete: kNone means no map exists. A blank's candidates are
// tried in the order their triples appear in `target`, for the first triple
// of h that constrains it; on a closure this prefers shallow derivations.
MapSearchResult FindMap(const Graph& h, const Graph& target,
                        std::size_t budget = kDefaultSearchBudget);

enum class Outcome { kHolds, kFails, kUnknown };
const char* OutcomeName(Outcome o);

// A derivation of μ(H) from G. Steps are in dependency order; input triples
// appear as 1b steps with no premises. When H has blanks the last step is
// 1a: its premises are μ(H) and `goal` holds H.
struct Proof {
  std::vector<ProofStep> steps;
  Graph goal;
  VariableMap map;
};

struct EntailmentOptions {
  Mode mode = Mode::kFull;
  std::optional<std::size_t> triple_cap;
  std::size_t search_budget = kDefaultSearchBudget;
  bool want_proof = false;
};

struct EntailmentReport {
  Outcome outcome = Outcome::kFails;
  VariableMap map;
  std::optional<Proof> proof;
  // For kFails: triples of H that have no image in the closure even on
  // their own. May be empty when every triple maps but not jointly.
  std::vector<Triple> missing;
  std::size_t search_nodes = 0;

  bool holds() const { return outcome == Outcome::kHolds; }
};

// Throws ResourceLimitError from the closure.
EntailmentReport Entails(const Graph& g, const Graph& h,
                         const EntailmentOptions& options = {});
// Against a precomputed closure (of g in options.mode).
EntailmentReport Entails(const ClosureResult& closure, const Graph& h,
                         const EntailmentOptions& options = {});

// Requires μ(h) ⊆ closure.closure.
Proof ExtractProof(const ClosureResult& closure, const Graph& h,
                   const VariableMap& mu);

// Replays `proof` from g: every 1b step is in g, every rule step follows
// from earlier conclusions by its rule (allowed in `mode`), and the final
// state yields the goal under the map. On failure describes the first bad
// step in *error.
bool VerifyProof(const Graph& g, const Proof& proof, Mode mode,
                 std::string* error = nullptr);

// Numbered listing:
//   (1) opioid cdisj antipyretic .   Rule (1b)
//   (2) opioid sc !antipyretic .     Rule (6d): (1)
std::string FormatProof(const Proof& proof);

}  // namespace rhodf

#endif  // RHODF_ENTAILMENT_H_
