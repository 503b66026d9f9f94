#include "rhodf/reasoner.h"

#include <algorithm>
#include <functional>
#include <span>
#include <limits>
#include <string>

namespace rhodf {

namespace {

constexpr std::string_view kRuleNames[kRuleCount] = {
    "1a", "1b", "2a", "2b", "2c", "2d", "2e", "3a", "3b", "3c", "3d", "3e",
    "4a", "4b", "4c", "4d", "4e", "4f", "4g", "4h", "5a", "5b", "6a", "6b",
    "6c", "6d", "6e", "7a", "7b", "7c", "7d", "7e", "8a", "8b",
};

using vocab::kDisjC;
using vocab::kDisjP;
using vocab::kDom;
using vocab::kRange;
using vocab::kSc;
using vocab::kSp;
using vocab::kType;

struct PairKey {
  std::uint64_t a;
  std::uint64_t b;
  friend bool operator==(const PairKey& x, const PairKey& y) {
    return x.a == y.a && x.b == y.b;
  }
};
struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const noexcept {
    std::uint64_t x = k.a * 0x9e3779b97f4a7c15ULL ^ (k.b + 0x632be59bd9b4e019ULL);
    x ^= x >> 31;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 29;
    return static_cast<std::size_t>(x);
  }
};

using Ids = std::vector<std::uint32_t>;
const Ids kNoIds;

// Append-only triple store with the access paths the rules need.
class Store {
 public:
  bool contains(const Triple& t) const { return set_.count(t) != 0; }
  std::size_t size() const { return triples_.size(); }
  const Triple& at(std::uint32_t id) const { return triples_[id]; }
  const std::vector<Triple>& triples() const { return triples_; }

  void Add(const Triple& t) {
    if (!set_.insert(t).second) return;
    auto id = static_cast<std::uint32_t>(triples_.size());
    triples_.push_back(t);
    by_p_[t.p].push_back(id);
    by_ps_[{t.p.packed(), t.s.packed()}].push_back(id);
    by_po_[{t.p.packed(), t.o.packed()}].push_back(id);
    if (t.s.is_star()) by_star_s_[t.s].push_back(id);
    if (t.o.is_star()) by_star_o_[t.o].push_back(id);
  }

  const Ids& ByP(Term p) const { return Find(by_p_, p); }
  const Ids& ByPS(Term p, Term s) const {
    auto it = by_ps_.find({p.packed(), s.packed()});
    return it == by_ps_.end() ? kNoIds : it->second;
  }
  const Ids& ByPO(Term p, Term o) const {
    auto it = by_po_.find({p.packed(), o.packed()});
    return it == by_po_.end() ? kNoIds : it->second;
  }
  // Triples whose subject (object) is the star term `star`.
  const Ids& ByStarS(Term star) const { return Find(by_star_s_, star); }
  const Ids& ByStarO(Term star) const { return Find(by_star_o_, star); }

 private:
  static const Ids& Find(const std::unordered_map<Term, Ids>& m, Term k) {
    auto it = m.find(k);
    return it == m.end() ? kNoIds : it->second;
  }

  std::vector<Triple> triples_;
  std::unordered_set<Triple, TripleHash> set_;
  std::unordered_map<Term, Ids> by_p_;
  std::unordered_map<PairKey, Ids, PairKeyHash> by_ps_;
  std::unordered_map<PairKey, Ids, PairKeyHash> by_po_;
  std::unordered_map<Term, Ids> by_star_s_;
  std::unordered_map<Term, Ids> by_star_o_;
};

bool StarFree(const Triple& t) { return !t.s.is_star() && !t.o.is_star(); }

// Matches rule premises against a store, with one premise bound to a given
// triple. Conclusions are handed to `emit`.
class Matcher {
 public:
  using Emit = std::function<void(RuleId, std::vector<Triple>, Triple)>;

  Matcher(const Store& store, Mode mode, std::array<bool, kRuleCount> enabled,
          Emit emit)
      : st_(store), mode_(mode), on_(enabled), emit_(std::move(emit)) {}

  // Every instantiation with `t` in at least one premise position, except
  // 6c/7c which are driven separately.
  void Match(const Triple& t) {
    const Term s = t.s, p = t.p, o = t.o;
    if (p == kSp) MatchSp(t);
    if (p == kSc) MatchSc(t);
    if (p == kType) MatchType(t);
    if (p == kDom || p == kRange) MatchDomRange(t);
    if (p == kDisjC) MatchDisjC(t);
    if (p == kDisjP) MatchDisjP(t);

    // t as a generic premise (X D Y).
    for (auto id : st_.ByPS(kSp, p)) {  // (D sp E)
      const Triple& u = st_.at(id);
      Fire(SubpropertyRule(t), {u, t}, {s, u.o, o});
    }
    if (StarFree(t)) {
      if (on(RuleId::k4a)) {
        for (auto id : st_.ByPS(kDom, p)) {
          Fire(RuleId::k4a, {st_.at(id), t}, {s, kType, st_.at(id).o});
        }
      }
      if (on(RuleId::k4b)) {
        for (auto id : st_.ByPS(kRange, p)) {
          Fire(RuleId::k4b, {st_.at(id), t}, {o, kType, st_.at(id).o});
        }
      }
      if (on(RuleId::k4c) && p.negatable()) {
        for (auto id : st_.ByPS(kDom, p)) {  // (D dom B)
          const Triple& v = st_.at(id);
          if (!v.o.negatable()) continue;
          for (auto xid : st_.ByPO(kType, v.o.Negated())) {  // (X type ¬B)
            const Triple& x = st_.at(xid);
            Fire(RuleId::k4c, {v, x, t}, {x.s, p.Negated(), o});
          }
        }
      }
      if (on(RuleId::k4d) && p.negatable()) {
        for (auto id : st_.ByPS(kRange, p)) {
          const Triple& v = st_.at(id);
          if (!v.o.negatable()) continue;
          for (auto yid : st_.ByPO(kType, v.o.Negated())) {
            const Triple& y = st_.at(yid);
            Fire(RuleId::k4d, {v, y, t}, {s, p.Negated(), y.s});
          }
        }
      }
      if (on(RuleId::k5a) || on(RuleId::k5b)) {
        for (auto id : st_.ByPS(kSp, p)) {  // (D sp A)
          const Triple& v = st_.at(id);
          if (on(RuleId::k5a)) {
            for (auto wid : st_.ByPS(kDom, v.o)) {
              const Triple& w = st_.at(wid);
              Fire(RuleId::k5a, {w, v, t}, {s, kType, w.o});
            }
          }
          if (on(RuleId::k5b)) {
            for (auto wid : st_.ByPS(kRange, v.o)) {
              const Triple& w = st_.at(wid);
              Fire(RuleId::k5b, {w, v, t}, {o, kType, w.o});
            }
          }
        }
      }
    }
    if (o.is_star()) {
      const Term c = o.StarClass();
      if (on(RuleId::k3d)) {
        for (auto id : st_.ByPO(kSc, c)) {  // (B sc C)
          const Triple& v = st_.at(id);
          if (!v.s.starrable()) continue;
          Fire(RuleId::k3d, {t, v}, {s, p, Term::Star(v.s)});
        }
      }
      if (on(RuleId::k4e)) {
        for (auto id : st_.ByPO(kType, c)) {
          Fire(RuleId::k4e, {t, st_.at(id)}, {s, p, st_.at(id).s});
        }
      }
      if (on(RuleId::k4g) && p.negatable()) {
        for (auto id : st_.ByPS(p.Negated(), s)) {  // (A ¬D Y)
          Fire(RuleId::k4g, {t, st_.at(id)}, {st_.at(id).o, kType, c.Negated()});
        }
      }
    }
    if (s.is_star()) {
      const Term c = s.StarClass();
      if (on(RuleId::k3e)) {
        for (auto id : st_.ByPO(kSc, c)) {
          const Triple& v = st_.at(id);
          if (!v.s.starrable()) continue;
          Fire(RuleId::k3e, {t, v}, {Term::Star(v.s), p, o});
        }
      }
      if (on(RuleId::k4f)) {
        for (auto id : st_.ByPO(kType, c)) {
          Fire(RuleId::k4f, {t, st_.at(id)}, {st_.at(id).s, p, o});
        }
      }
      if (on(RuleId::k4h) && p.negatable()) {
        for (auto id : st_.ByPO(p.Negated(), o)) {  // (X ¬D B)
          Fire(RuleId::k4h, {t, st_.at(id)}, {st_.at(id).s, kType, c.Negated()});
        }
      }
    }
    // t as (A ¬D Y) of 4g or (X ¬D B) of 4h; here D = ¬p.
    if (p.negatable() && !s.is_star() && !o.is_star()) {
      const Term d = p.Negated();
      if (on(RuleId::k4g)) {
        for (auto id : st_.ByPS(d, s)) {
          const Triple& u = st_.at(id);
          if (!u.o.is_star()) continue;
          Fire(RuleId::k4g, {u, t}, {o, kType, u.o.StarClass().Negated()});
        }
      }
      if (on(RuleId::k4h)) {
        for (auto id : st_.ByPO(d, o)) {
          const Triple& u = st_.at(id);
          if (!u.s.is_star()) continue;
          Fire(RuleId::k4h, {u, t}, {s, kType, u.s.StarClass().Negated()});
        }
      }
    }
  }

  // Rule 6c (7c): (A ⊥ A) and a triple `why` making B a class (property)
  // give (A ⊥ B).
  void SelfDisjoint(RuleId rule, const Triple& t, Term b, const Triple* why) {
    std::vector<Triple> premises = {t};
    if (why) premises.push_back(*why);
    Fire(rule, std::move(premises), {t.s, t.p, b});
  }

  bool on(RuleId r) const { return on_[RuleIndex(r)]; }

 private:
  RuleId SubpropertyRule(const Triple& t) const {
    if (mode_ == Mode::kRdf) return RuleId::k2b;
    if (t.o.is_star()) return RuleId::k2d;
    if (t.s.is_star()) return RuleId::k2e;
    return RuleId::k2b;
  }

  void Fire(RuleId r, std::vector<Triple> premises, Triple c) {
    if (!on(r) || !IsValidTriple(c)) return;
    emit_(r, std::move(premises), c);
  }

  void MatchSp(const Triple& t) {
    const Term s = t.s, o = t.o;
    if (on(RuleId::k2a)) {
      for (auto id : st_.ByPS(kSp, o)) {
        Fire(RuleId::k2a, {t, st_.at(id)}, {s, kSp, st_.at(id).o});
      }
      for (auto id : st_.ByPO(kSp, s)) {
        Fire(RuleId::k2a, {st_.at(id), t}, {st_.at(id).s, kSp, o});
      }
    }
    // (D sp E) with D = s.
    for (auto id : st_.ByP(s)) {
      const Triple& u = st_.at(id);
      Fire(SubpropertyRule(u), {t, u}, {u.s, o, u.o});
    }
    if (on(RuleId::k2c) && s.negatable() && o.negatable()) {
      Fire(RuleId::k2c, {t}, {o.Negated(), kSp, s.Negated()});
    }
    // (D sp A) as second premise of 5a/5b.
    if (on(RuleId::k5a)) {
      for (auto vid : st_.ByPS(kDom, o)) {
        const Triple& v = st_.at(vid);
        for (auto id : st_.ByP(s)) {
          const Triple& u = st_.at(id);
          if (!StarFree(u)) continue;
          Fire(RuleId::k5a, {v, t, u}, {u.s, kType, v.o});
        }
      }
    }
    if (on(RuleId::k5b)) {
      for (auto vid : st_.ByPS(kRange, o)) {
        const Triple& v = st_.at(vid);
        for (auto id : st_.ByP(s)) {
          const Triple& u = st_.at(id);
          if (!StarFree(u)) continue;
          Fire(RuleId::k5b, {v, t, u}, {u.o, kType, v.o});
        }
      }
    }
    if (on(RuleId::k7b)) {
      for (auto id : st_.ByPS(kDisjP, o)) {
        Fire(RuleId::k7b, {st_.at(id), t}, {s, kDisjP, st_.at(id).o});
      }
    }
    if (on(RuleId::k7e) && o.negatable()) {
      Fire(RuleId::k7e, {t}, {s, kDisjP, o.Negated()});
    }
  }

  void MatchSc(const Triple& t) {
    const Term s = t.s, o = t.o;
    if (on(RuleId::k3a)) {
      for (auto id : st_.ByPS(kSc, o)) {
        Fire(RuleId::k3a, {t, st_.at(id)}, {s, kSc, st_.at(id).o});
      }
      for (auto id : st_.ByPO(kSc, s)) {
        Fire(RuleId::k3a, {st_.at(id), t}, {st_.at(id).s, kSc, o});
      }
    }
    if (on(RuleId::k3b)) {
      for (auto id : st_.ByPO(kType, s)) {
        Fire(RuleId::k3b, {t, st_.at(id)}, {st_.at(id).s, kType, o});
      }
    }
    if (on(RuleId::k3c) && s.negatable() && o.negatable()) {
      Fire(RuleId::k3c, {t}, {o.Negated(), kSc, s.Negated()});
    }
    if (o.starrable() && s.starrable()) {
      const Term star_c = Term::Star(o);
      const Term star_b = Term::Star(s);
      if (on(RuleId::k3d)) {
        for (auto id : st_.ByStarO(star_c)) {
          const Triple& u = st_.at(id);
          Fire(RuleId::k3d, {u, t}, {u.s, u.p, star_b});
        }
      }
      if (on(RuleId::k3e)) {
        for (auto id : st_.ByStarS(star_c)) {
          const Triple& u = st_.at(id);
          Fire(RuleId::k3e, {u, t}, {star_b, u.p, u.o});
        }
      }
    }
    if (on(RuleId::k6b)) {
      for (auto id : st_.ByPS(kDisjC, o)) {
        Fire(RuleId::k6b, {st_.at(id), t}, {s, kDisjC, st_.at(id).o});
      }
    }
    if (on(RuleId::k6e) && o.negatable()) {
      Fire(RuleId::k6e, {t}, {s, kDisjC, o.Negated()});
    }
  }

  void MatchType(const Triple& t) {
    const Term s = t.s, o = t.o;
    if (on(RuleId::k3b)) {
      for (auto id : st_.ByPS(kSc, o)) {
        Fire(RuleId::k3b, {st_.at(id), t}, {s, kType, st_.at(id).o});
      }
    }
    // (X type ¬B) in 4c / (Y type ¬B) in 4d.
    if (o.negatable() && (on(RuleId::k4c) || on(RuleId::k4d))) {
      const Term b = o.Negated();
      if (on(RuleId::k4c)) {
        for (auto vid : st_.ByPO(kDom, b)) {
          const Triple& v = st_.at(vid);
          if (!v.s.negatable()) continue;
          const Term not_d = v.s.Negated();
          for (auto id : st_.ByP(v.s)) {
            const Triple& u = st_.at(id);
            if (!StarFree(u)) continue;
            Fire(RuleId::k4c, {v, t, u}, {s, not_d, u.o});
          }
        }
      }
      if (on(RuleId::k4d)) {
        for (auto vid : st_.ByPO(kRange, b)) {
          const Triple& v = st_.at(vid);
          if (!v.s.negatable()) continue;
          const Term not_d = v.s.Negated();
          for (auto id : st_.ByP(v.s)) {
            const Triple& u = st_.at(id);
            if (!StarFree(u)) continue;
            Fire(RuleId::k4d, {v, t, u}, {u.s, not_d, s});
          }
        }
      }
    }
    if (o.starrable()) {
      const Term star = Term::Star(o);
      if (on(RuleId::k4e)) {
        for (auto id : st_.ByStarO(star)) {
          const Triple& u = st_.at(id);
          Fire(RuleId::k4e, {u, t}, {u.s, u.p, s});
        }
      }
      if (on(RuleId::k4f)) {
        for (auto id : st_.ByStarS(star)) {
          const Triple& u = st_.at(id);
          Fire(RuleId::k4f, {u, t}, {s, u.p, u.o});
        }
      }
    }
  }

  void MatchDomRange(const Triple& t) {
    const bool dom = t.p == kDom;
    const Term s = t.s, o = t.o;
    const RuleId typing = dom ? RuleId::k4a : RuleId::k4b;
    const RuleId negative = dom ? RuleId::k4c : RuleId::k4d;
    const RuleId inherited = dom ? RuleId::k5a : RuleId::k5b;
    const RuleId disjoint = dom ? RuleId::k8a : RuleId::k8b;

    if (on(typing)) {
      for (auto id : st_.ByP(s)) {
        const Triple& u = st_.at(id);
        if (!StarFree(u)) continue;
        Fire(typing, {t, u}, {dom ? u.s : u.o, kType, o});
      }
    }
    if (on(negative) && s.negatable() && o.negatable()) {
      const Term not_d = s.Negated();
      for (auto xid : st_.ByPO(kType, o.Negated())) {
        const Triple& x = st_.at(xid);
        for (auto id : st_.ByP(s)) {
          const Triple& u = st_.at(id);
          if (!StarFree(u)) continue;
          if (dom) {
            Fire(negative, {t, x, u}, {x.s, not_d, u.o});
          } else {
            Fire(negative, {t, x, u}, {u.s, not_d, x.s});
          }
        }
      }
    }
    if (on(inherited)) {
      for (auto vid : st_.ByPO(kSp, s)) {  // (D sp A)
        const Triple& v = st_.at(vid);
        for (auto id : st_.ByP(v.s)) {
          const Triple& u = st_.at(id);
          if (!StarFree(u)) continue;
          Fire(inherited, {t, v, u}, {dom ? u.s : u.o, kType, o});
        }
      }
    }
    if (on(disjoint)) {
      // t = (A dom C): pair with (C ⊥c D), (B dom D).
      for (auto vid : st_.ByPS(kDisjC, o)) {
        const Triple& v = st_.at(vid);
        for (auto wid : st_.ByPO(t.p, v.o)) {
          const Triple& w = st_.at(wid);
          Fire(disjoint, {t, w, v}, {s, kDisjP, w.s});
        }
      }
      // t = (B dom D): pair with (C ⊥c D), (A dom C).
      for (auto vid : st_.ByPO(kDisjC, o)) {
        const Triple& v = st_.at(vid);
        for (auto wid : st_.ByPO(t.p, v.s)) {
          const Triple& w = st_.at(wid);
          Fire(disjoint, {w, t, v}, {w.s, kDisjP, s});
        }
      }
    }
  }

  void MatchDisjC(const Triple& t) {
    const Term s = t.s, o = t.o;
    if (on(RuleId::k6a)) Fire(RuleId::k6a, {t}, {o, kDisjC, s});
    if (on(RuleId::k6b)) {
      for (auto id : st_.ByPO(kSc, s)) {
        Fire(RuleId::k6b, {t, st_.at(id)}, {st_.at(id).s, kDisjC, o});
      }
    }
    if (on(RuleId::k6d) && o.negatable()) {
      Fire(RuleId::k6d, {t}, {s, kSc, o.Negated()});
    }
    for (RuleId r : {RuleId::k8a, RuleId::k8b}) {
      if (!on(r)) continue;
      const Term rel = r == RuleId::k8a ? kDom : kRange;
      for (auto aid : st_.ByPO(rel, s)) {
        const Triple& a = st_.at(aid);
        for (auto bid : st_.ByPO(rel, o)) {
          const Triple& b = st_.at(bid);
          Fire(r, {a, b, t}, {a.s, kDisjP, b.s});
        }
      }
    }
  }

  void MatchDisjP(const Triple& t) {
    const Term s = t.s, o = t.o;
    if (on(RuleId::k7a)) Fire(RuleId::k7a, {t}, {o, kDisjP, s});
    if (on(RuleId::k7b)) {
      for (auto id : st_.ByPO(kSp, s)) {
        Fire(RuleId::k7b, {t, st_.at(id)}, {st_.at(id).s, kDisjP, o});
      }
    }
    if (on(RuleId::k7d) && o.negatable()) {
      Fire(RuleId::k7d, {t}, {s, kSp, o.Negated()});
    }
  }

  const Store& st_;
  Mode mode_;
  std::array<bool, kRuleCount> on_;
  Emit emit_;
};

std::array<bool, kRuleCount> EnabledRules(Mode mode,
                                          const std::vector<RuleId>& disabled) {
  std::array<bool, kRuleCount> on{};
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    auto r = static_cast<RuleId>(i);
    on[i] = mode == Mode::kFull || IsRdfRule(r);
  }
  on[RuleIndex(RuleId::k1a)] = on[RuleIndex(RuleId::k1b)] = false;
  for (RuleId r : disabled) on[RuleIndex(r)] = false;
  // 2d/2e are 2b at star positions; in rdf mode they are reported as 2b.
  if (mode == Mode::kRdf) {
    on[RuleIndex(RuleId::k2d)] = on[RuleIndex(RuleId::k2e)] =
        on[RuleIndex(RuleId::k2b)];
  }
  return on;
}

void AddTerm(std::vector<Term>& vec, std::unordered_set<Term>& set,
             std::unordered_map<Term, Triple>* source, const Triple* why,
             Term t, std::size_t* added) {
  auto add = [&](Term x) {
    if (!set.insert(x).second) return;
    vec.push_back(x);
    if (source && why) source->emplace(x, *why);
    if (added) ++*added;
  };
  add(t);
  if (t.negatable()) add(t.Negated());
}

const Triple* Lookup(const std::unordered_map<Term, Triple>& m, Term t) {
  auto it = m.find(t);
  return it == m.end() ? nullptr : &it->second;
}

}  // namespace

std::string_view RuleName(RuleId r) { return kRuleNames[RuleIndex(r)]; }

std::optional<RuleId> ParseRuleId(std::string_view name) {
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    if (kRuleNames[i] == name) return static_cast<RuleId>(i);
  }
  return std::nullopt;
}

bool IsRdfRule(RuleId r) {
  switch (r) {
    case RuleId::k1a: case RuleId::k1b:
    case RuleId::k2a: case RuleId::k2b:
    case RuleId::k3a: case RuleId::k3b:
    case RuleId::k4a: case RuleId::k4b:
    case RuleId::k5a: case RuleId::k5b:
      return true;
    default:
      return false;
  }
}

std::size_t Domains::Observe(const Triple& t) {
  std::size_t added = 0;
  auto prop = [&](Term x) {
    AddTerm(property_terms, property_set, &property_source, &t, x, nullptr);
  };
  auto cls = [&](Term x) {
    AddTerm(class_terms, class_set, &class_source, &t, x, &added);
  };
  prop(t.p);
  if (t.p == kSp || t.p == kDisjP) {
    prop(t.s);
    prop(t.o);
  }
  if (t.p == kDom || t.p == kRange) prop(t.s);
  if (t.p == kType || t.p == kDom || t.p == kRange) cls(t.o);
  if (t.p == kSc || t.p == kDisjC) {
    cls(t.s);
    cls(t.o);
  }
  if (t.s.is_star()) cls(t.s.StarClass());
  if (t.o.is_star()) cls(t.o.StarClass());
  return added;
}

Domains RecognizeDomains(const Graph& g) {
  Domains d;
  for (Term v : vocab::kAll) {
    AddTerm(d.property_terms, d.property_set, nullptr, nullptr, v, nullptr);
  }
  for (const Triple& t : g) d.Observe(t);
  return d;
}

std::size_t DefaultTripleCap(std::size_t n) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  if (n > 0 && n > 1000000) return kMax;  // n³ overflows well before this
  std::size_t cube = n * n * n;
  if (cube > (kMax - 1000) / 10) return kMax;
  return 10 * cube + 1000;
}

std::vector<ProofStep> Instantiate(RuleId rule, const Graph& g,
                                   const Domains& domains) {
  if (rule == RuleId::k1a || rule == RuleId::k1b) {
    throw std::invalid_argument("Instantiate: rules 1a/1b are not forward rules");
  }
  Store store;
  for (const Triple& t : g) store.Add(t);
  std::array<bool, kRuleCount> on{};
  on[RuleIndex(rule)] = true;
  std::vector<ProofStep> out;
  std::unordered_set<Triple, TripleHash> seen;
  Matcher m(store, Mode::kFull, on,
            [&](RuleId r, std::vector<Triple> premises, Triple c) {
              if (g.contains(c) || !seen.insert(c).second) return;
              out.push_back({r, std::move(premises), c});
            });
  for (const Triple& t : g) {
    if (rule == RuleId::k6c || rule == RuleId::k7c) {
      const Term rel = rule == RuleId::k6c ? kDisjC : kDisjP;
      if (t.p != rel || t.s != t.o) continue;
      const bool c = rule == RuleId::k6c;
      const auto& terms = c ? domains.class_terms : domains.property_terms;
      const auto& source = c ? domains.class_source : domains.property_source;
      for (Term b : terms) m.SelfDisjoint(rule, t, b, Lookup(source, b));
    } else {
      m.Match(t);
    }
  }
  return out;
}

ClosureResult Closure(const Graph& g, const ClosureOptions& options) {
  const std::size_t cap = options.triple_cap.value_or(DefaultTripleCap(g.size()));
  ClosureResult result;
  result.domains = RecognizeDomains(g);
  Domains& dom = result.domains;

  Store store;
  for (const Triple& t : g) store.Add(t);
  if (store.size() > cap) {
    throw ResourceLimitError("closure exceeds triple cap of " +
                             std::to_string(cap) + " (input alone has " +
                             std::to_string(store.size()) + ")");
  }

  std::vector<Triple> pending;
  std::unordered_set<Triple, TripleHash> pending_set;
  auto& stats = result.stats;
  Matcher m(store, options.mode, EnabledRules(options.mode, options.disabled_rules),
            [&](RuleId r, std::vector<Triple> premises, Triple c) {
              ++stats.fired[RuleIndex(r)];
              if (store.contains(c) || !pending_set.insert(c).second) return;
              ++stats.derived[RuleIndex(r)];
              pending.push_back(c);
              result.provenance.emplace(c, ProofStep{r, std::move(premises), c});
              if (store.size() + pending.size() > cap) {
                throw ResourceLimitError("closure exceeds triple cap of " +
                                         std::to_string(cap));
              }
            });
  const bool self_c = m.on(RuleId::k6c);
  const bool self_p = m.on(RuleId::k7c);

  // Triples [delta_begin, store.size()) are new since the last round;
  // class/property terms from index new_c / new_p on are likewise new.
  std::size_t delta_begin = 0;
  std::size_t new_c = 0, new_p = 0;
  std::vector<Triple> self_disjoint_c, self_disjoint_p;
  while (delta_begin < store.size()) {
    ++stats.iterations;
    const std::size_t delta_end = store.size();
    // Ids are stable; copy because Match reads the store by reference only.
    for (std::size_t i = delta_begin; i < delta_end; ++i) {
      m.Match(store.at(static_cast<std::uint32_t>(i)));
    }
    // 6c/7c: new self-disjoint triples against every term, old ones against
    // the terms that appeared last round.
    if (self_c || self_p) {
      const std::size_t old_sc = self_disjoint_c.size();
      const std::size_t old_sp = self_disjoint_p.size();
      for (std::size_t i = delta_begin; i < delta_end; ++i) {
        const Triple& t = store.at(static_cast<std::uint32_t>(i));
        if (t.s != t.o) continue;
        if (t.p == kDisjC) self_disjoint_c.push_back(t);
        if (t.p == kDisjP) self_disjoint_p.push_back(t);
      }
      for (std::size_t k = 0; k < self_disjoint_c.size() && self_c; ++k) {
        std::size_t from = k < old_sc ? new_c : 0;
        for (std::size_t j = from; j < dom.class_terms.size(); ++j) {
          Term b = dom.class_terms[j];
          m.SelfDisjoint(RuleId::k6c, self_disjoint_c[k], b,
                         Lookup(dom.class_source, b));
        }
      }
      for (std::size_t k = 0; k < self_disjoint_p.size() && self_p; ++k) {
        std::size_t from = k < old_sp ? new_p : 0;
        for (std::size_t j = from; j < dom.property_terms.size(); ++j) {
          Term b = dom.property_terms[j];
          m.SelfDisjoint(RuleId::k7c, self_disjoint_p[k], b,
                         Lookup(dom.property_source, b));
        }
      }
    }
    new_c = dom.class_terms.size();
    new_p = dom.property_terms.size();
    delta_begin = delta_end;
    for (const Triple& t : pending) {
      store.Add(t);
      dom.Observe(t);
    }
    pending.clear();
    pending_set.clear();
  }

  result.closure = Graph(std::span<const Triple>(store.triples()));
  return result;
}

}  // namespace rhodf
