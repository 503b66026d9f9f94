// Triples, well-formedness, graphs and blank-node maps.

#ifndef RHODF_GRAPH_H_
#define RHODF_GRAPH_H_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rhodf/term.h"

namespace rhodf {

struct Triple {
  Term s;
  Term p;
  Term o;

  friend bool operator==(const Triple& a, const Triple& b) {
    return a.s == b.s && a.p == b.p && a.o == b.o;
  }
  friend bool operator!=(const Triple& a, const Triple& b) { return !(a == b); }
  friend bool operator<(const Triple& a, const Triple& b) {
    if (a.s != b.s) return a.s < b.s;
    if (a.p != b.p) return a.p < b.p;
    return a.o < b.o;
  }
};

std::string ToString(const Triple& t);

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept {
    std::hash<Term> h;
    std::size_t x = h(t.s);
    x = x * 0x9e3779b97f4a7c15ULL + h(t.p);
    x = x * 0x9e3779b97f4a7c15ULL + h(t.o);
    return x;
  }
};

// The ways a candidate triple can fail to be a ρdf⊥¬-triple.
enum class Violation {
  kVocabularyResource,  // 1: s or o in ρdf⊥
  kPredicateShape,      // 2 and shape: p is a star, blank or literal
  kBothStar,            // 3: s and o both star terms
  kStarWithVocabulary,  // 4: p in ρdf⊥ with a star subject or object
};

const char* ViolationName(Violation v);

// Empty result means well-formed.
std::vector<Violation> ValidateTriple(Term s, Term p, Term o);
inline bool IsValidTriple(const Triple& t) {
  return ValidateTriple(t.s, t.p, t.o).empty();
}

class InvalidTripleError : public std::invalid_argument {
 public:
  InvalidTripleError(const Triple& t, std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Finite set of well-formed triples, iterated in insertion order. Immutable
// once built; use GraphBuilder to assemble one.
class Graph {
 public:
  Graph() = default;
  // Throws InvalidTripleError on the first ill-formed triple.
  Graph(std::initializer_list<Triple> triples);
  explicit Graph(std::span<const Triple> triples);

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool contains(const Triple& t) const { return index_.count(t) != 0; }

  const std::vector<Triple>& triples() const { return triples_; }
  auto begin() const { return triples_.begin(); }
  auto end() const { return triples_.end(); }

  // uni(G): every term occurring in G, in first-occurrence order.
  const std::vector<Term>& universe() const { return universe_; }
  // voc(G) = uni(G) ∩ UL.
  std::vector<Term> vocabulary() const;
  std::vector<Term> blanks() const;
  bool ground() const;
  bool has_star_terms() const;

  // Set equality (order-insensitive).
  friend bool operator==(const Graph& a, const Graph& b);
  bool IsSubsetOf(const Graph& other) const;

 private:
  friend class GraphBuilder;
  void AddUnchecked(const Triple& t);

  std::vector<Triple> triples_;
  std::unordered_set<Triple, TripleHash> index_;
  std::vector<Term> universe_;
  std::unordered_set<Term> universe_index_;
};

class GraphBuilder {
 public:
  GraphBuilder() = default;
  explicit GraphBuilder(const Graph& seed) : graph_(seed) {}

  // Returns false if the triple was already present. Throws
  // InvalidTripleError for ill-formed triples.
  bool Add(const Triple& t);
  bool Add(Term s, Term p, Term o) { return Add(Triple{s, p, o}); }
  bool contains(const Triple& t) const { return graph_.contains(t); }
  std::size_t size() const { return graph_.size(); }

  Graph Build() && { return std::move(graph_); }
  Graph Build() const& { return graph_; }

 private:
  Graph graph_;
};

// μ: blanks to terms, identity on IRIs and literals. Images are restricted
// to non-vocabulary, non-star terms so that every image triple stays
// well-formed.
class VariableMap {
 public:
  VariableMap() = default;

  // Throws TermError if `blank` is not a blank node or the image is a star
  // or vocabulary term.
  void Assign(Term blank, Term image);
  Term operator()(Term t) const;
  Triple operator()(const Triple& t) const;

  const std::unordered_map<Term, Term>& assignment() const {
    return assignment_;
  }
  std::optional<Term> Lookup(Term blank) const;
  bool empty() const { return assignment_.empty(); }
  // True when every assigned blank maps to itself.
  bool IsIdentity() const;

 private:
  std::unordered_map<Term, Term> assignment_;
};

// μ(G). Throws InvalidTripleError if an image triple is ill-formed.
Graph ApplyMap(const VariableMap& mu, const Graph& g);

}  // namespace rhodf

#endif  // RHODF_GRAPH_H_
