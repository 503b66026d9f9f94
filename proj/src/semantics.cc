#include "rhodf/semantics.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <tuple>

#include "rhodf/parser.h"

namespace rhodf {

std::set<Element> Project(const std::set<ElementPair>& ext, Side side) {
  std::set<Element> out;
  for (const auto& [x, y] : ext) out.insert(side == Side::kUp ? x : y);
  return out;
}

Element Interpretation::Intern(std::string_view name) {
  if (auto it = index_.find(std::string(name)); it != index_.end()) {
    return it->second;
  }
  std::string base(name);
  std::string neg;
  bool negated = base.size() > 1 && base[0] == '!';
  if (negated) {
    neg = base;
    base.erase(0, 1);
  } else {
    neg = "!" + base;
  }
  Element e = static_cast<Element>(names_.size());
  names_.push_back(base);
  names_.push_back(neg);
  index_.emplace(base, e);
  index_.emplace(neg, e + 1);
  for (auto& d : dom_) d.resize(names_.size());
  return negated ? e + 1 : e;
}

std::optional<Element> Interpretation::Find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Interpretation::Add(Domain d, Element e) {
  if (dom_[d].size() <= e) dom_[d].resize(e + 1);
  if (dom_[d][e]) return false;
  dom_[d][e] = true;
  return true;
}

std::vector<Element> Interpretation::Members(Domain d) const {
  std::vector<Element> out;
  for (Element e = 0; e < dom_[d].size(); ++e) {
    if (dom_[d][e]) out.push_back(e);
  }
  return out;
}

bool Interpretation::Bits::Set(Element r, Element c) {
  if (rows.size() <= r) rows.resize(r + 1);
  auto& row = rows[r];
  if (row.size() <= c / 64) row.resize(c / 64 + 1);
  std::uint64_t bit = std::uint64_t{1} << (c % 64);
  if (row[c / 64] & bit) return false;
  row[c / 64] |= bit;
  return true;
}

bool Interpretation::AddPair(Element p, Element s, Element o) {
  if (pair_bits_.size() <= p) pair_bits_.resize(p + 1);
  if (!pair_bits_[p].Set(s, o)) return false;
  pairs_[p].emplace(s, o);
  return true;
}

bool Interpretation::HasPair(Element p, Element s, Element o) const {
  return p < pair_bits_.size() && pair_bits_[p].Test(s, o);
}

const std::set<ElementPair>& Interpretation::Pairs(Element p) const {
  static const std::set<ElementPair> kEmpty;
  auto it = pairs_.find(p);
  return it == pairs_.end() ? kEmpty : it->second;
}

bool Interpretation::AddMember(Element c, Element x) {
  if (!member_bits_.Set(c, x)) return false;
  members_[c].insert(x);
  return true;
}

bool Interpretation::HasMember(Element c, Element x) const {
  return member_bits_.Test(c, x);
}

const std::set<Element>& Interpretation::Extension(Element c) const {
  static const std::set<Element> kEmpty;
  auto it = members_.find(c);
  return it == members_.end() ? kEmpty : it->second;
}

std::optional<Element> Interpretation::Denotation(Term t) const {
  if (auto it = denote_.find(t); it != denote_.end()) return it->second;
  if (t.is_neg()) {
    auto base = Denotation(t.NegBase());
    if (base) return Complement(*base);
    return std::nullopt;
  }
  if (t.is_star()) return std::nullopt;
  return Find(ToString(t));
}

// ---------------------------------------------------------------------------
// Fixture format.

namespace {

// Whitespace-separated tokens; a token starting with `"` or `!"` runs to
// the closing quote.
std::vector<std::string> Tokenize(std::string_view line, std::size_t lineno) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::size_t b = i;
    std::size_t q = line[i] == '!' ? i + 1 : i;
    if (q < line.size() && line[q] == '"') {
      i = q + 1;
      while (i < line.size() && line[i] != '"') i += line[i] == '\\' ? 2 : 1;
      if (i >= line.size()) {
        throw InterpretationFormatError("line " + std::to_string(lineno) +
                                        ": unterminated literal");
      }
      ++i;
    } else {
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    }
    out.emplace_back(line.substr(b, i - b));
  }
  return out;
}

const char* kDomainTag[] = {"R", "P", "C", "L"};

}  // namespace

Interpretation ParseInterpretation(std::string_view text) {
  Interpretation i;
  std::size_t lineno = 0;
  std::size_t b = 0;
  while (b <= text.size()) {
    std::size_t e = text.find('\n', b);
    if (e == std::string_view::npos) e = text.size();
    ++lineno;
    std::vector<std::string> tok = Tokenize(text.substr(b, e - b), lineno);
    b = e + 1;
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw InterpretationFormatError("line " + std::to_string(lineno) + ": " + msg);
    };
    auto arity = [&](std::size_t n) {
      if (tok.size() != n + 1) {
        fail("'" + tok[0] + "' takes " + std::to_string(n) + " argument(s)");
      }
    };
    const std::string& kw = tok[0];
    bool domain = false;
    for (int d = 0; d < Interpretation::kDomainCount; ++d) {
      if (kw == kDomainTag[d]) {
        arity(1);
        Element x = i.Intern(tok[1]);
        auto dd = static_cast<Interpretation::Domain>(d);
        i.Add(dd, x);
        if (dd != Interpretation::kL) i.Add(dd, Interpretation::Complement(x));
        domain = true;
      }
    }
    if (domain) continue;
    if (kw == "P+") {
      arity(3);
      i.AddPair(i.Intern(tok[1]), i.Intern(tok[2]), i.Intern(tok[3]));
    } else if (kw == "C+") {
      arity(2);
      i.AddMember(i.Intern(tok[1]), i.Intern(tok[2]));
    } else if (kw == "I") {
      arity(2);
      std::string err;
      std::optional<Term> t = ParseTerm(tok[1], &err);
      if (!t) fail("bad term '" + tok[1] + "': " + err);
      if (t->is_star()) fail("star terms have no denotation");
      i.Denote(*t, i.Intern(tok[2]));
    } else {
      fail("unknown statement '" + kw + "'");
    }
  }
  return i;
}

std::string SerializeInterpretation(const Interpretation& i) {
  std::vector<std::string> lines;
  for (int d = 0; d < Interpretation::kDomainCount; ++d) {
    for (Element e : i.Members(static_cast<Interpretation::Domain>(d))) {
      lines.push_back(std::string(kDomainTag[d]) + " " + i.Name(e));
    }
  }
  for (const auto& [p, ext] : i.property_extensions()) {
    for (const auto& [s, o] : ext) {
      lines.push_back("P+ " + i.Name(p) + " " + i.Name(s) + " " + i.Name(o));
    }
  }
  for (const auto& [c, ext] : i.class_extensions()) {
    for (Element x : ext) lines.push_back("C+ " + i.Name(c) + " " + i.Name(x));
  }
  for (const auto& [t, e] : i.explicit_denotations()) {
    lines.push_back("I " + ToString(t) + " " + i.Name(e));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::string FormatViolation(const Interpretation& i, const ConditionViolation& v) {
  std::string out = v.condition;
  for (std::size_t k = 0; k < v.elements.size(); ++k) {
    out += k ? ", " : ": ";
    out += i.Name(v.elements[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conditions. Each one reports a violation together with the single fact
// whose addition repairs it (when there is one): every condition is a Horn
// clause over domain memberships and positive extensions, so repeating
// "check, then add all repairs" reaches the least model above a start.

namespace {

using D = Interpretation::Domain;

struct Fact {
  enum Kind { kNone, kDomain, kPair, kMember } kind = kNone;
  Element a = 0, b = 0, c = 0;
};

Fact InDomain(D d, Element e) { return {Fact::kDomain, static_cast<Element>(d), e, 0}; }
Fact Pair(Element p, Element s, Element o) { return {Fact::kPair, p, s, o}; }
Fact Member(Element c, Element x) { return {Fact::kMember, c, x, 0}; }

bool Apply(Interpretation& i, const Fact& f) {
  switch (f.kind) {
    case Fact::kNone:
      return false;
    case Fact::kDomain:
      return i.Add(static_cast<D>(f.a), f.b);
    case Fact::kPair:
      return i.AddPair(f.a, f.b, f.c);
    case Fact::kMember:
      return i.AddMember(f.a, f.b);
  }
  return false;
}

using Sink = std::function<void(const char*, std::initializer_list<Element>, Fact)>;

constexpr Element Neg(Element e) { return Interpretation::Complement(e); }

void InvariantConditions(const Interpretation& i, const Sink& sink) {
  if (i.Members(D::kR).empty()) sink("Interpretation.1", {}, {});
  if (i.Members(D::kP).empty()) sink("Interpretation.2", {}, {});
  for (Element c : i.Members(D::kC)) {
    if (!i.In(D::kR, c)) sink("Interpretation.3", {c}, InDomain(D::kR, c));
  }
  for (D d : {D::kR, D::kP, D::kC}) {
    for (Element e : i.Members(d)) {
      if (!i.In(d, Neg(e))) sink("Interpretation.4", {e}, InDomain(d, Neg(e)));
    }
  }
  for (Element l : i.Members(D::kL)) {
    if (!i.In(D::kR, l)) sink("Interpretation.5", {l}, InDomain(D::kR, l));
  }
  for (const auto& [p, ext] : i.property_extensions()) {
    if (ext.empty()) continue;
    if (!i.In(D::kP, p)) sink("Interpretation.6", {p}, InDomain(D::kP, p));
    for (const auto& [s, o] : ext) {
      if (!i.In(D::kR, s)) sink("Interpretation.6", {p, s}, InDomain(D::kR, s));
      if (!i.In(D::kR, o)) sink("Interpretation.6", {p, o}, InDomain(D::kR, o));
    }
  }
  for (const auto& [c, ext] : i.class_extensions()) {
    if (ext.empty()) continue;
    if (!i.In(D::kC, c)) sink("Interpretation.7", {c}, InDomain(D::kC, c));
    for (Element x : ext) {
      if (!i.In(D::kR, x)) sink("Interpretation.7", {c, x}, InDomain(D::kR, x));
    }
  }
}

// Pairs of ext with first component x.
template <typename F>
void ForFirst(const std::set<ElementPair>& ext, Element x, F f) {
  for (auto it = ext.lower_bound({x, 0}); it != ext.end() && it->first == x; ++it) {
    f(it->second);
  }
}

// Conditions over a hierarchy predicate h (sp or sc) on domain d whose
// members have extension `ext` (pairs or members).
template <typename Missing>
void HierarchyConditions(const Interpretation& i, Element h, D d,
                         const char* name, Missing missing, const Sink& sink) {
  const std::string n1 = std::string(name) + ".1";
  const std::string n2 = std::string(name) + ".2";
  const std::string n3 = std::string(name) + ".3";
  const auto& rel = i.Pairs(h);
  for (const auto& [x, y] : rel) {
    ForFirst(rel, y, [&](Element z) {
      if (i.In(d, x) && i.In(d, y) && i.In(d, z) && !i.HasPair(h, x, z)) {
        sink(n1.c_str(), {x, y, z}, Pair(h, x, z));
      }
    });
    if (!i.In(d, x)) sink(n2.c_str(), {x}, InDomain(d, x));
    if (!i.In(d, y)) sink(n2.c_str(), {y}, InDomain(d, y));
    if (x != y) missing(x, y, n2.c_str());
    if (!i.HasPair(h, Neg(y), Neg(x))) sink(n3.c_str(), {x, y}, Pair(h, Neg(y), Neg(x)));
  }
}

// Symmetric, sub-transitive and exhaustive over d.
void DisjointnessShape(const Interpretation& i, Element disj, Element h, D d,
                       const char* name, const Sink& sink) {
  const std::string sym = std::string(name) + ".Symmetry";
  const std::string sub = std::string(name) + ".Sub-Transitivity";
  const std::string exh = std::string(name) + ".Exhaustive";
  const auto& rel = i.Pairs(disj);
  std::map<Element, std::vector<Element>> below;  // c -> {e | (e, c) ∈ h}
  for (const auto& [e, c] : i.Pairs(h)) below[c].push_back(e);
  const std::vector<Element> dom = i.Members(d);
  for (const auto& [c, x] : rel) {
    if (!i.HasPair(disj, x, c)) sink(sym.c_str(), {c, x}, Pair(disj, x, c));
    if (auto it = below.find(c); it != below.end()) {
      for (Element e : it->second) {
        if (!i.HasPair(disj, e, x)) sink(sub.c_str(), {c, x, e}, Pair(disj, e, x));
      }
    }
    if (c == x) {
      for (Element y : dom) {
        if (!i.HasPair(disj, c, y)) sink(exh.c_str(), {c, y}, Pair(disj, c, y));
      }
    }
  }
}

void GraphIndependentConditions(const Interpretation& i, const Sink& sink) {
  InvariantConditions(i, sink);

  std::optional<Element> v[7];
  for (int k = 0; k < 7; ++k) {
    v[k] = i.Denotation(vocab::kAll[k]);
    if (!v[k]) sink("Interpretation.8", {}, {});
  }
  // Typing II.1 and everything below need the vocabulary denoted.
  for (int k = 0; k < 7; ++k) {
    if (v[k] && !i.In(D::kP, *v[k])) sink("Typing II.1", {*v[k]}, InDomain(D::kP, *v[k]));
  }
  if (!std::all_of(std::begin(v), std::end(v), [](auto& x) { return x.has_value(); })) {
    return;
  }
  const Element sp = *v[0], sc = *v[1], type = *v[2], dom = *v[3],
                range = *v[4], cdisj = *v[5], pdisj = *v[6];

  HierarchyConditions(
      i, sp, D::kP, "Subproperty",
      [&](Element p, Element q, const char* n) {
        for (const auto& [x, y] : i.Pairs(p)) {
          if (!i.HasPair(q, x, y)) sink(n, {p, q, x, y}, Pair(q, x, y));
        }
      },
      sink);
  HierarchyConditions(
      i, sc, D::kC, "Subclass",
      [&](Element c, Element d, const char* n) {
        for (Element x : i.Extension(c)) {
          if (!i.HasMember(d, x)) sink(n, {c, d, x}, Member(d, x));
        }
      },
      sink);

  // Typing I.
  for (const auto& [c, ext] : i.class_extensions()) {
    for (Element x : ext) {
      if (!i.HasPair(type, x, c)) sink("Typing I.1", {x, c}, Pair(type, x, c));
    }
  }
  for (const auto& [x, c] : i.Pairs(type)) {
    if (i.In(D::kC, c) && !i.HasMember(c, x)) sink("Typing I.1", {x, c}, Member(c, x));
  }
  // Projections per property, computed on first use in this pass.
  std::map<std::pair<Element, Side>, std::set<Element>> projections;
  auto projection = [&](Element p, Side side) -> const std::set<Element>& {
    auto [it, fresh] = projections.try_emplace({p, side});
    if (fresh) it->second = Project(i.Pairs(p), side);
    return it->second;
  };
  for (const auto& [p, c] : i.Pairs(dom)) {
    if (!i.In(D::kC, c)) continue;
    for (const auto& [x, y] : i.Pairs(p)) {
      if (!i.HasMember(c, x)) sink("Typing I.2", {p, c, x, y}, Member(c, x));
    }
    const std::set<Element>& down = projection(p, Side::kDown);
    for (Element x : i.Extension(Neg(c))) {
      for (Element y : down) {
        if (!i.HasPair(Neg(p), x, y)) sink("Typing I.4", {p, c, x, y}, Pair(Neg(p), x, y));
      }
    }
  }
  for (const auto& [p, c] : i.Pairs(range)) {
    if (!i.In(D::kC, c)) continue;
    for (const auto& [x, y] : i.Pairs(p)) {
      if (!i.HasMember(c, y)) sink("Typing I.3", {p, c, x, y}, Member(c, y));
    }
    const std::set<Element>& up = projection(p, Side::kUp);
    for (Element y : i.Extension(Neg(c))) {
      for (Element x : up) {
        if (!i.HasPair(Neg(p), x, y)) sink("Typing I.5", {p, c, x, y}, Pair(Neg(p), x, y));
      }
    }
  }

  // Typing II.2-4.
  for (auto [pred, name] : {std::pair{dom, "Typing II.2"}, std::pair{range, "Typing II.3"}}) {
    for (const auto& [p, c] : i.Pairs(pred)) {
      if (!i.In(D::kP, p)) sink(name, {p}, InDomain(D::kP, p));
      if (!i.In(D::kC, c)) sink(name, {c}, InDomain(D::kC, c));
    }
  }
  for (const auto& [x, c] : i.Pairs(type)) {
    if (!i.In(D::kC, c)) sink("Typing II.4", {c}, InDomain(D::kC, c));
  }

  // Disjointness I.
  for (const auto& [c, d] : i.Pairs(cdisj)) {
    if (!i.In(D::kC, c)) sink("Disjointness I.1", {c}, InDomain(D::kC, c));
    if (!i.In(D::kC, d)) sink("Disjointness I.1", {d}, InDomain(D::kC, d));
  }
  for (const auto& [p, q] : i.Pairs(pdisj)) {
    if (!i.In(D::kP, p)) sink("Disjointness I.2", {p}, InDomain(D::kP, p));
    if (!i.In(D::kP, q)) sink("Disjointness I.2", {q}, InDomain(D::kP, q));
  }
  DisjointnessShape(i, cdisj, sc, D::kC, "Disjointness I.3", sink);
  DisjointnessShape(i, pdisj, sp, D::kP, "Disjointness I.4", sink);

  // Disjointness II.
  for (auto [pred, name] : {std::pair{dom, "Disjointness II.1"},
                            std::pair{range, "Disjointness II.2"}}) {
    const auto& rel = i.Pairs(pred);
    for (const auto& [p, c] : rel) {
      for (const auto& [q, d] : rel) {
        if (i.HasPair(cdisj, c, d) && !i.HasPair(pdisj, p, q)) {
          sink(name, {p, c, q, d}, Pair(pdisj, p, q));
        }
      }
    }
  }
  for (auto [disj, h, name] : {std::tuple{cdisj, sc, "Disjointness II.3"},
                               std::tuple{pdisj, sp, "Disjointness II.4"}}) {
    for (const auto& [c, d] : i.Pairs(disj)) {
      if (!i.HasPair(h, c, Neg(d))) sink(name, {c, d}, Pair(h, c, Neg(d)));
    }
    for (const auto& [c, e] : i.Pairs(h)) {
      if (!i.HasPair(disj, c, Neg(e))) sink(name, {c, Neg(e)}, Pair(disj, c, Neg(e)));
    }
  }
}

// A triple with every position resolved to an element; for a star position
// the element is the star's class.
struct Resolved {
  Element s, p, o;
  bool star_s = false, star_o = false;
};

void SimpleConditions(const Interpretation& i, const Resolved& t, const Sink& sink) {
  if (!i.In(D::kP, t.p)) {
    sink(t.star_s || t.star_o ? "Simple.2" : "Simple.1", {t.p}, InDomain(D::kP, t.p));
  }
  if (!t.star_s && !t.star_o) {
    if (!i.HasPair(t.p, t.s, t.o)) sink("Simple.1", {t.s, t.p, t.o}, Pair(t.p, t.s, t.o));
    return;
  }
  const Element c = t.star_o ? t.o : t.s;
  if (!i.In(D::kC, c)) sink(t.star_o ? "Simple.2" : "Simple.3", {c}, InDomain(D::kC, c));
  if (t.star_o) {
    for (Element y : i.Extension(c)) {
      if (!i.HasPair(t.p, t.s, y)) sink("Simple.2", {t.s, t.p, c, y}, Pair(t.p, t.s, y));
    }
    ForFirst(i.Pairs(Neg(t.p)), t.s, [&](Element y) {
      if (!i.HasMember(Neg(c), y)) sink("Simple.4", {t.s, t.p, c, y}, Member(Neg(c), y));
    });
  } else {
    for (Element x : i.Extension(c)) {
      if (!i.HasPair(t.p, x, t.o)) sink("Simple.3", {c, t.p, t.o, x}, Pair(t.p, x, t.o));
    }
    for (const auto& [x, y] : i.Pairs(Neg(t.p))) {
      if (y == t.o && !i.HasMember(Neg(c), x)) {
        sink("Simple.5", {c, t.p, t.o, x}, Member(Neg(c), x));
      }
    }
  }
}

bool SimpleHolds(const Interpretation& i, const Resolved& t) {
  bool ok = true;
  SimpleConditions(i, t, [&](const char*, std::initializer_list<Element>, Fact) { ok = false; });
  return ok;
}

// Resolves g's triples under i plus a blank assignment.
class Resolver {
 public:
  Resolver(const Interpretation& i, const Graph& g) : i_(i) {
    for (Term t : g.universe()) {
      if (t.is_blank() && !i.Denotation(t)) {
        blank_index_.emplace(t, blanks_.size());
        blanks_.push_back(t);
      }
    }
  }

  const std::vector<Term>& blanks() const { return blanks_; }
  std::optional<std::size_t> BlankIndex(Term t) const {
    auto it = blank_index_.find(t);
    if (it == blank_index_.end()) return std::nullopt;
    return it->second;
  }

  // nullopt if some non-blank position has no denotation.
  std::optional<Resolved> Resolve(const Triple& t,
                                  const std::vector<Element>& assignment) const {
    auto den = [&](Term x) -> std::optional<Element> {
      if (x.is_star()) x = x.StarClass();
      if (auto k = BlankIndex(x)) {
        if (*k >= assignment.size()) return std::nullopt;
        return assignment[*k];
      }
      return i_.Denotation(x);
    };
    auto s = den(t.s), p = den(t.p), o = den(t.o);
    if (!s || !p || !o) return std::nullopt;
    return Resolved{*s, *p, *o, t.s.is_star(), t.o.is_star()};
  }

 private:
  const Interpretation& i_;
  std::vector<Term> blanks_;
  std::unordered_map<Term, std::size_t> blank_index_;
};

// Items 8 and 9 for the terms of g.
void DenotationConditions(const Interpretation& i, const Graph& g,
                          const Resolver& r, const Sink& sink) {
  for (Term t : g.universe()) {
    if (t.is_star()) t = t.StarClass();
    if (t.is_blank() && r.BlankIndex(t)) continue;
    std::optional<Element> e = i.Denotation(t);
    if (!e) {
      sink("Interpretation.8", {}, {});
      continue;
    }
    if (t.is_blank()) {
      if (!i.In(D::kR, *e)) sink("Interpretation.9", {*e}, InDomain(D::kR, *e));
      continue;
    }
    if (!i.In(D::kR, *e) && !i.In(D::kP, *e)) {
      sink("Interpretation.8", {*e}, InDomain(D::kR, *e));
    }
    if (t.is_literal() && !i.In(D::kL, *e)) {
      sink("Interpretation.5", {*e}, InDomain(D::kL, *e));
    }
    if (t.is_neg()) {
      auto base = i.Denotation(t.NegBase());
      if (!base || *base != Interpretation::Complement(*e)) {
        sink("Interpretation.8", {*e}, {});
      }
    }
  }
}

class BlankSearch {
 public:
  BlankSearch(const Interpretation& i, const Graph& g, const Resolver& r)
      : i_(i), r_(r), candidates_(i.Members(D::kR)) {
    by_depth_.resize(r.blanks().size() + 1);
    for (const Triple& t : g) {
      std::size_t depth = 0;
      for (Term x : {t.s, t.p, t.o}) {
        if (auto k = r.BlankIndex(x)) depth = std::max(depth, *k + 1);
      }
      by_depth_[depth].push_back(t);
    }
    assignment_.resize(r.blanks().size());
  }

  std::optional<std::vector<Element>> Run() {
    if (!Holds(0)) return std::nullopt;
    if (Extend(0)) return assignment_;
    return std::nullopt;
  }

 private:
  bool Holds(std::size_t depth) const {
    for (const Triple& t : by_depth_[depth]) {
      auto rt = r_.Resolve(t, assignment_);
      if (!rt || !SimpleHolds(i_, *rt)) return false;
    }
    return true;
  }

  bool Extend(std::size_t k) {
    if (k == assignment_.size()) return true;
    for (Element e : candidates_) {
      assignment_[k] = e;
      if (Holds(k + 1) && Extend(k + 1)) return true;
    }
    return false;
  }

  const Interpretation& i_;
  const Resolver& r_;
  std::vector<Element> candidates_;
  std::vector<std::vector<Triple>> by_depth_;
  std::vector<Element> assignment_;
};

class Collector {
 public:
  void operator()(const char* cond, std::initializer_list<Element> elems, Fact) {
    Add(cond, std::vector<Element>(elems));
  }
  void Add(const char* cond, std::vector<Element> elems) {
    ConditionViolation v{cond, std::move(elems)};
    if (seen_.insert({v.condition, v.elements}).second) {
      report_.violations.push_back(std::move(v));
    }
  }
  SatisfactionReport Take() {
    report_.satisfied = report_.violations.empty();
    return std::move(report_);
  }

 private:
  SatisfactionReport report_;
  std::set<std::pair<std::string, std::vector<Element>>> seen_;
};

// Adds repairs until no condition fails; returns the number of facts added.
// Blanks of g must be denoted. Repairs are applied as they are found: the
// condition loops only hold set and map iterators, which insertion does not
// invalidate, and whatever a pass misses the next one sees.
std::size_t Saturate(Interpretation& i, const Graph& g) {
  std::size_t added = 0;
  bool changed = true;
  Sink sink = [&](const char*, std::initializer_list<Element>, Fact f) {
    if (Apply(i, f)) {
      ++added;
      changed = true;
    }
  };
  while (changed) {
    changed = false;
    GraphIndependentConditions(i, sink);
    Resolver r(i, g);
    for (const Triple& t : g) {
      if (auto rt = r.Resolve(t, {})) SimpleConditions(i, *rt, sink);
    }
  }
  return added;
}

void InternGraphTerms(Interpretation& i, const Graph& g) {
  for (Term v : vocab::kAll) i.Intern(ToString(v));
  for (Term t : g.universe()) i.Intern(ToString(t.is_star() ? t.StarClass() : t));
}

}  // namespace

ModelChecker::ModelChecker(const Interpretation& i) : i_(i) {
  Collector c;
  GraphIndependentConditions(i, std::ref(c));
  fixed_ = c.Take();
}

SatisfactionReport ModelChecker::Check(const Graph& g) const {
  Collector c;
  for (const auto& v : fixed_.violations) c.Add(v.condition.c_str(), v.elements);
  Resolver r(i_, g);
  DenotationConditions(i_, g, r, std::ref(c));

  std::optional<std::vector<Element>> assignment;
  if (!r.blanks().empty()) assignment = BlankSearch(i_, g, r).Run();
  if (!assignment) {
    // Default: a same-named resource if there is one, else the first.
    std::vector<Element> res = i_.Members(D::kR);
    assignment.emplace();
    for (Term b : r.blanks()) {
      auto e = i_.Find(ToString(b));
      assignment->push_back(e && i_.In(D::kR, *e) ? *e : res.empty() ? 0 : res[0]);
    }
  }
  for (const Triple& t : g) {
    if (auto rt = r.Resolve(t, *assignment)) SimpleConditions(i_, *rt, std::ref(c));
  }
  return c.Take();
}

SatisfactionReport CheckModel(const Interpretation& i, const Graph& g) {
  return ModelChecker(i).Check(g);
}

CanonicalModel BuildCanonicalModel(const Graph& g,
                                   const CanonicalModelOptions& options) {
  ClosureOptions co;
  co.mode = options.mode;
  co.triple_cap = options.triple_cap;
  ClosureResult cl = Closure(g, co);

  CanonicalModel out;
  Interpretation& i = out.model;
  InternGraphTerms(i, cl.closure);
  for (Element e = 0; e < i.element_count(); ++e) i.Add(D::kR, e);
  auto elem = [&](Term t) { return *i.Find(ToString(t)); };
  for (Term t : cl.domains.property_terms) {
    i.Add(D::kP, elem(t));
    i.Add(D::kP, Neg(elem(t)));
  }
  for (Term v : vocab::kAll) {
    i.Add(D::kP, elem(v));
    i.Add(D::kP, Neg(elem(v)));
  }
  for (Term t : cl.domains.class_terms) {
    i.Add(D::kC, elem(t));
    i.Add(D::kC, Neg(elem(t)));
  }
  for (Term t : cl.closure.universe()) {
    if (t.is_literal()) i.Add(D::kL, elem(t));
  }
  for (const Triple& t : cl.closure) {
    if (t.s.is_star() || t.o.is_star()) continue;
    i.AddPair(elem(t.p), elem(t.s), elem(t.o));
    if (t.p == vocab::kType) i.AddMember(elem(t.o), elem(t.s));
  }
  if (options.complete) out.completion_facts = Saturate(i, g);
  return out;
}

Interpretation LeastModel(const Graph& g) {
  Interpretation i;
  InternGraphTerms(i, g);
  for (Element e = 0; e < i.element_count(); ++e) i.Add(D::kR, e);
  for (Term t : g.universe()) {
    if (t.is_literal()) i.Add(D::kL, *i.Find(ToString(t)));
  }
  Saturate(i, g);
  return i;
}

Satisfiability IsSatisfiable(const Graph& g) {
  Satisfiability out;
  out.witness = BuildCanonicalModel(g).model;
  out.satisfiable = CheckModel(out.witness, g).satisfied;
  return out;
}

}  // namespace rhodf
