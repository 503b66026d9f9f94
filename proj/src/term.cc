#include "rhodf/term.h"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace rhodf {

namespace {

bool IsBareStart(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

bool IsBareChar(char c) {
  return IsBareStart(c) || (c >= '0' && c <= '9') || c == '_' || c == '-';
}

bool IsBareName(std::string_view s) {
  if (s.empty() || !IsBareStart(s.front())) return false;
  for (char c : s) {
    if (!IsBareChar(c)) return false;
  }
  return true;
}

}  // namespace

// Append-only string pool shared by every term in the process.
class TermPool {
 public:
  static TermPool& Get() {
    static TermPool pool;
    return pool;
  }

  Term::Atom Intern(std::string_view name) {
    {
      std::shared_lock lock(mu_);
      auto it = ids_.find(std::string(name));
      if (it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mu_);
    auto [it, inserted] =
        ids_.emplace(std::string(name), static_cast<Term::Atom>(names_.size()));
    if (inserted) names_.emplace_back(name);
    return it->second;
  }

  const std::string& Name(Term::Atom atom) {
    std::shared_lock lock(mu_);
    return names_.at(atom);
  }

  std::size_t size() {
    std::shared_lock lock(mu_);
    return names_.size();
  }

  static Term Make(TermKind kind, Term::Atom atom, bool star_neg) {
    return Term(kind, atom, star_neg);
  }

 private:
  TermPool() {
    for (const char* v : {"sp", "sc", "type", "dom", "range", "cdisj", "pdisj"}) {
      Intern(v);
    }
  }

  std::shared_mutex mu_;
  // deque keeps references stable across appends.
  std::deque<std::string> names_;
  std::unordered_map<std::string, Term::Atom> ids_;
};

Term Term::Iri(std::string_view name) {
  if (name.empty()) throw TermError("empty IRI");
  for (char c : name) {
    if (c == '<' || c == '>' || c == '"' || static_cast<unsigned char>(c) <= ' ') {
      throw TermError("invalid character in IRI '" + std::string(name) + "'");
    }
  }
  return TermPool::Make(TermKind::kIri, TermPool::Get().Intern(name), false);
}

Term Term::Literal(std::string_view lexical) {
  for (char c : lexical) {
    if (c == '\n' || c == '\r') throw TermError("line break in literal");
  }
  return TermPool::Make(TermKind::kLiteral, TermPool::Get().Intern(lexical),
                        false);
}

Term Term::Blank(std::string_view name) {
  if (name.empty()) throw TermError("empty blank node label");
  for (char c : name) {
    if (!IsBareChar(c)) {
      throw TermError("invalid blank node label '" + std::string(name) + "'");
    }
  }
  return TermPool::Make(TermKind::kBlank, TermPool::Get().Intern(name), false);
}

Term Term::Negation(Term t) {
  if (t.is_neg()) return TermPool::Make(TermKind::kIri, t.atom_, false);
  if (!t.is_iri()) {
    throw TermError("negation is only defined on IRIs, not '" + ToString(t) +
                    "'");
  }
  if (t.is_vocabulary()) {
    throw TermError("cannot negate vocabulary term '" + ToString(t) + "'");
  }
  return TermPool::Make(TermKind::kNeg, t.atom_, false);
}

Term Term::Star(Term c) {
  if (!c.starrable()) {
    throw TermError("star subscript must be a non-vocabulary IRI or negated "
                    "IRI, not '" + ToString(c) + "'");
  }
  return TermPool::Make(TermKind::kStar, c.atom_, c.is_neg());
}

bool Term::is_vocabulary() const {
  return kind_ == TermKind::kIri && atom_ < kVocabularySize;
}

bool Term::is_rdf_vocabulary() const {
  return kind_ == TermKind::kIri && atom_ <= kRangeAtom;
}

Term Term::StarClass() const {
  if (!is_star()) throw TermError("not a star term: " + ToString(*this));
  return TermPool::Make(star_neg_ ? TermKind::kNeg : TermKind::kIri, atom_,
                        false);
}

Term Term::NegBase() const {
  if (!is_neg()) throw TermError("not a negated term: " + ToString(*this));
  return TermPool::Make(TermKind::kIri, atom_, false);
}

const std::string& Term::name() const { return TermPool::Get().Name(atom_); }

Term Negate(Term t, unsigned depth) {
  return depth % 2 == 0 ? t : Term::Negation(t);
}

std::string ToString(Term t) {
  auto iri = [](const std::string& name) {
    return IsBareName(name) ? name : "<" + name + ">";
  };
  switch (t.kind()) {
    case TermKind::kIri:
      return iri(t.name());
    case TermKind::kNeg:
      return "!" + iri(t.name());
    case TermKind::kStar:
      return std::string(t.StarClass().is_neg() ? "*!" : "*") + iri(t.name());
    case TermKind::kBlank:
      return "_:" + t.name();
    case TermKind::kLiteral: {
      std::string out = "\"";
      for (char c : t.name()) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
      return out;
    }
  }
  return {};
}

std::size_t AtomCount() { return TermPool::Get().size(); }

}  // namespace rhodf
