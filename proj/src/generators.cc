#include "rhodf/generators.h"

#include <string>
#include <vector>

namespace rhodf {

namespace {

Term Named(const char* prefix, int i) {
  return Term::Iri(prefix + std::to_string(i));
}

}  // namespace

Graph SpChain(int n) {
  GraphBuilder b;
  for (int i = 1; i < n; ++i) b.Add(Named("p", i), vocab::kSp, Named("p", i + 1));
  return std::move(b).Build();
}

Graph Cubic(int n) {
  GraphBuilder b;
  const Term c = Term::Iri("c");
  const Term star_c = Term::Star(c);
  for (int i = 1; i <= n; ++i) {
    b.Add(Named("a", i), vocab::kType, c);
    b.Add(Named("a", i), Named("p", 1), star_c);
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) b.Add(Named("p", i), vocab::kSp, Named("p", j));
  }
  return std::move(b).Build();
}

Graph RandomGraph(const RandomGraphOptions& opt, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto coin = [&](double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  };
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto maybe_neg = [&](Term t) { return coin(opt.negation) ? t.Negated() : t; };
  auto cls = [&] { return maybe_neg(Named("c", pick(std::max(opt.classes, 1)))); };
  auto prop = [&] { return maybe_neg(Named("p", pick(std::max(opt.properties, 1)))); };
  auto individual = [&](bool object) {
    if (coin(opt.blank)) return Term::Blank("b" + std::to_string(pick(std::max(opt.individuals, 1))));
    if (object && coin(opt.literal)) return Term::Literal("v" + std::to_string(pick(3)));
    return Named("i", pick(std::max(opt.individuals, 1)));
  };

  GraphBuilder b;
  const int kinds = opt.disjointness ? 9 : 7;
  int attempts = 0;
  while (static_cast<int>(b.size()) < opt.triples && attempts++ < 50 * opt.triples + 50) {
    Triple t;
    switch (pick(kinds)) {
      case 0:
      case 1: {  // instance triple, possibly with one star end
        Term s = individual(false), o = individual(true);
        if (coin(opt.star)) {
          if (coin(0.5)) s = Term::Star(cls()); else o = Term::Star(cls());
        }
        t = {s, prop(), o};
        break;
      }
      case 2: t = {individual(false), vocab::kType, cls()}; break;
      case 3: t = {cls(), vocab::kSc, cls()}; break;
      case 4: t = {prop(), vocab::kSp, prop()}; break;
      case 5: t = {prop(), vocab::kDom, cls()}; break;
      case 6: t = {prop(), vocab::kRange, cls()}; break;
      case 7: t = {cls(), vocab::kDisjC, cls()}; break;
      default: t = {prop(), vocab::kDisjP, prop()}; break;
    }
    if (IsValidTriple(t)) b.Add(t);
  }
  if (opt.salted) {
    const Term x = Term::Iri("salt_x"), c = Term::Iri("salt_c");
    b.Add(x, vocab::kType, c);
    b.Add(x, vocab::kType, c.Negated());
    b.Add(c, vocab::kDisjC, c);
  }
  return std::move(b).Build();
}

}  // namespace rhodf
