// Terms of the ρdf⊥¬ alphabet: IRIs, literals, blank nodes, negated
// resources ¬r and star terms ⋆c.
//
// A Term is a packed 64-bit value. Atom names live in a process-wide
// append-only pool; negation and star are flags over an IRI atom, so term
// identity, hashing and the structural operations never touch the pool.

#ifndef RHODF_TERM_H_
#define RHODF_TERM_H_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rhodf {

enum class TermKind : std::uint8_t {
  kIri = 0,
  kLiteral = 1,
  kBlank = 2,
  kNeg = 3,   // ¬r, r an IRI outside ρdf⊥
  kStar = 4,  // ⋆c, c an IRI or a negated IRI outside ρdf⊥
};

class TermError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Term {
 public:
  using Atom = std::uint32_t;

  // Default-constructed term is the IRI `sp`; only useful as a placeholder.
  constexpr Term() = default;

  // Throws TermError on a malformed name.
  static Term Iri(std::string_view name);
  static Term Literal(std::string_view lexical);
  static Term Blank(std::string_view name);

  // ¬t. Throws TermError unless t is an IRI outside ρdf⊥ or a negated IRI;
  // negating a negation yields the base IRI.
  static Term Negation(Term t);
  // ⋆c. Throws TermError unless c is an IRI or negated IRI outside ρdf⊥.
  static Term Star(Term c);

  constexpr TermKind kind() const { return kind_; }
  constexpr Atom atom() const { return atom_; }

  constexpr bool is_iri() const { return kind_ == TermKind::kIri; }
  constexpr bool is_literal() const { return kind_ == TermKind::kLiteral; }
  constexpr bool is_blank() const { return kind_ == TermKind::kBlank; }
  constexpr bool is_neg() const { return kind_ == TermKind::kNeg; }
  constexpr bool is_star() const { return kind_ == TermKind::kStar; }

  // Member of ρdf⊥ = {sp, sc, type, dom, range, ⊥c, ⊥p}.
  bool is_vocabulary() const;
  // Member of ρdf = {sp, sc, type, dom, range}.
  bool is_rdf_vocabulary() const;
  // Member of U (IRIs, negated IRIs, star terms).
  constexpr bool is_uri() const {
    return kind_ == TermKind::kIri || kind_ == TermKind::kNeg ||
           kind_ == TermKind::kStar;
  }
  bool negatable() const {
    return (is_iri() && !is_vocabulary()) || is_neg();
  }
  bool starrable() const { return negatable(); }

  Term Negated() const { return Negation(*this); }
  // Subscript of a star term (an IRI or a negated IRI).
  Term StarClass() const;
  // Base IRI of a negated term.
  Term NegBase() const;

  // Name of the underlying atom (IRI name, literal lexical form, blank
  // label). For ¬r and ⋆c this is the name of r / c's base.
  const std::string& name() const;

  constexpr std::uint64_t packed() const {
    return static_cast<std::uint64_t>(atom_) |
           (static_cast<std::uint64_t>(kind_) << 32) |
           (static_cast<std::uint64_t>(star_neg_) << 40);
  }

  friend constexpr bool operator==(Term a, Term b) {
    return a.packed() == b.packed();
  }
  friend constexpr bool operator!=(Term a, Term b) { return !(a == b); }
  friend constexpr bool operator<(Term a, Term b) {
    return a.packed() < b.packed();
  }

 private:
  friend class TermPool;
  constexpr Term(TermKind kind, Atom atom, bool star_neg)
      : atom_(atom), kind_(kind), star_neg_(star_neg) {}

  Atom atom_ = 0;
  TermKind kind_ = TermKind::kIri;
  // For kStar: the subscript is ¬(atom) rather than atom.
  bool star_neg_ = false;

 public:
  // Vocabulary atoms are interned first, in this order.
  static constexpr Atom kSpAtom = 0;
  static constexpr Atom kScAtom = 1;
  static constexpr Atom kTypeAtom = 2;
  static constexpr Atom kDomAtom = 3;
  static constexpr Atom kRangeAtom = 4;
  static constexpr Atom kDisjCAtom = 5;
  static constexpr Atom kDisjPAtom = 6;
  static constexpr Atom kVocabularySize = 7;

  static constexpr Term MakeVocabulary(Atom a) {
    return Term(TermKind::kIri, a, false);
  }
};

namespace vocab {
inline constexpr Term kSp = Term::MakeVocabulary(Term::kSpAtom);
inline constexpr Term kSc = Term::MakeVocabulary(Term::kScAtom);
inline constexpr Term kType = Term::MakeVocabulary(Term::kTypeAtom);
inline constexpr Term kDom = Term::MakeVocabulary(Term::kDomAtom);
inline constexpr Term kRange = Term::MakeVocabulary(Term::kRangeAtom);
inline constexpr Term kDisjC = Term::MakeVocabulary(Term::kDisjCAtom);  // ⊥c
inline constexpr Term kDisjP = Term::MakeVocabulary(Term::kDisjPAtom);  // ⊥p

inline constexpr Term kAll[] = {kSp, kSc, kType, kDom, kRange, kDisjC, kDisjP};
}  // namespace vocab

// Terms are stored in normal form (¬¬r collapses on construction), so this
// is the identity; kept as the named operation for callers that want to be
// explicit about it.
inline Term Normalize(Term t) { return t; }

// Applies `depth` negations to t, collapsing by parity.
Term Negate(Term t, unsigned depth);

// Debug / diagnostic rendering in the ρNT concrete syntax.
std::string ToString(Term t);

// Number of interned atoms (for tests and statistics).
std::size_t AtomCount();

}  // namespace rhodf

template <>
struct std::hash<rhodf::Term> {
  std::size_t operator()(rhodf::Term t) const noexcept {
    std::uint64_t x = t.packed();
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

#endif  // RHODF_TERM_H_
