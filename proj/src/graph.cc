#include "rhodf/graph.h"

#include <algorithm>

namespace rhodf {

std::string ToString(const Triple& t) {
  return ToString(t.s) + " " + ToString(t.p) + " " + ToString(t.o) + " .";
}

const char* ViolationName(Violation v) {
  switch (v) {
    case Violation::kVocabularyResource:
      return "cond1: subject/object in the rho-df-bottom vocabulary";
    case Violation::kPredicateShape:
      return "predicate-shape: predicate must be an IRI or negated IRI";
    case Violation::kBothStar:
      return "cond3: subject and object are both star terms";
    case Violation::kStarWithVocabulary:
      return "cond4: star term with a vocabulary predicate";
  }
  return "?";
}

std::vector<Violation> ValidateTriple(Term s, Term p, Term o) {
  std::vector<Violation> out;
  if (s.is_vocabulary() || o.is_vocabulary()) {
    out.push_back(Violation::kVocabularyResource);
  }
  if (!(p.is_iri() || p.is_neg())) out.push_back(Violation::kPredicateShape);
  if (s.is_star() && o.is_star()) out.push_back(Violation::kBothStar);
  if (p.is_vocabulary() && (s.is_star() || o.is_star())) {
    out.push_back(Violation::kStarWithVocabulary);
  }
  return out;
}

namespace {

std::string DescribeViolations(const Triple& t,
                               const std::vector<Violation>& v) {
  std::string msg = "ill-formed triple " + ToString(t) + ":";
  for (Violation x : v) {
    msg += " [";
    msg += ViolationName(x);
    msg += "]";
  }
  return msg;
}

}  // namespace

InvalidTripleError::InvalidTripleError(const Triple& t,
                                       std::vector<Violation> violations)
    : std::invalid_argument(DescribeViolations(t, violations)),
      violations_(std::move(violations)) {}

Graph::Graph(std::initializer_list<Triple> triples)
    : Graph(std::span<const Triple>(triples.begin(), triples.size())) {}

Graph::Graph(std::span<const Triple> triples) {
  for (const Triple& t : triples) {
    auto v = ValidateTriple(t.s, t.p, t.o);
    if (!v.empty()) throw InvalidTripleError(t, std::move(v));
    AddUnchecked(t);
  }
}

void Graph::AddUnchecked(const Triple& t) {
  if (!index_.insert(t).second) return;
  triples_.push_back(t);
  for (Term x : {t.s, t.p, t.o}) {
    if (universe_index_.insert(x).second) universe_.push_back(x);
  }
}

std::vector<Term> Graph::vocabulary() const {
  std::vector<Term> out;
  for (Term t : universe_) {
    if (!t.is_blank()) out.push_back(t);
  }
  return out;
}

std::vector<Term> Graph::blanks() const {
  std::vector<Term> out;
  for (Term t : universe_) {
    if (t.is_blank()) out.push_back(t);
  }
  return out;
}

bool Graph::ground() const {
  return std::none_of(universe_.begin(), universe_.end(),
                      [](Term t) { return t.is_blank(); });
}

bool Graph::has_star_terms() const {
  return std::any_of(universe_.begin(), universe_.end(),
                     [](Term t) { return t.is_star(); });
}

bool operator==(const Graph& a, const Graph& b) {
  return a.size() == b.size() && a.IsSubsetOf(b);
}

bool Graph::IsSubsetOf(const Graph& other) const {
  return std::all_of(triples_.begin(), triples_.end(),
                     [&](const Triple& t) { return other.contains(t); });
}

bool GraphBuilder::Add(const Triple& t) {
  auto v = ValidateTriple(t.s, t.p, t.o);
  if (!v.empty()) throw InvalidTripleError(t, std::move(v));
  if (graph_.contains(t)) return false;
  graph_.AddUnchecked(t);
  return true;
}

void VariableMap::Assign(Term blank, Term image) {
  if (!blank.is_blank()) {
    throw TermError("map source must be a blank node, got " + ToString(blank));
  }
  if (image.is_star() || image.is_vocabulary()) {
    throw TermError("map image must not be a star or vocabulary term, got " +
                    ToString(image));
  }
  assignment_[blank] = image;
}

Term VariableMap::operator()(Term t) const {
  if (!t.is_blank()) return t;
  auto it = assignment_.find(t);
  return it == assignment_.end() ? t : it->second;
}

Triple VariableMap::operator()(const Triple& t) const {
  return Triple{(*this)(t.s), (*this)(t.p), (*this)(t.o)};
}

std::optional<Term> VariableMap::Lookup(Term blank) const {
  auto it = assignment_.find(blank);
  if (it == assignment_.end()) return std::nullopt;
  return it->second;
}

bool VariableMap::IsIdentity() const {
  return std::all_of(assignment_.begin(), assignment_.end(),
                     [](const auto& kv) { return kv.first == kv.second; });
}

Graph ApplyMap(const VariableMap& mu, const Graph& g) {
  GraphBuilder out;
  for (const Triple& t : g) out.Add(mu(t));
  return std::move(out).Build();
}

}  // namespace rhodf
