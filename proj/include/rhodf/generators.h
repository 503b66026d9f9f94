// Synthetic graph families for benchmarks and randomized testing.

#ifndef RHODF_GENERATORS_H_
#define RHODF_GENERATORS_H_

#include <cstdint>
#include <random>

#include "rhodf/graph.h"

namespace rhodf {

// {(p_i sp p_{i+1}) | 1 ≤ i < n}.
Graph SpChain(int n);

// {(a_i type c), (a_i p_1 ⋆c) | 1 ≤ i ≤ n} ∪ {(p_i sp p_j) | 1 ≤ i < j ≤ n}.
// Its closure has Θ(n³) triples.
Graph Cubic(int n);

struct RandomGraphOptions {
  int triples = 10;
  int individuals = 4;
  int classes = 3;
  int properties = 3;
  // Per-term probabilities.
  double negation = 0.2;
  double blank = 0.0;    // instance positions only
  double literal = 0.0;  // instance objects only
  double star = 0.1;     // instance subjects/objects, one per triple at most
  // Include the ⊥c / ⊥p vocabulary.
  bool disjointness = true;
  // Add (x type c), (x type ¬c), (c ⊥c c) for fresh x, c.
  bool salted = false;
};

// Deterministic in (options, seed).
Graph RandomGraph(const RandomGraphOptions& options, std::uint64_t seed);

}  // namespace rhodf

#endif  // RHODF_GENERATORS_H_
