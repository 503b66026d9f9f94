#include "rhodf/semantics.h"

#include <random>

#include <gtest/gtest.h>

#include "rhodf/entailment.h"
#include "rhodf/generators.h"
#include "rhodf/parser.h"
#include "testing/fixtures.h"

namespace rhodf {
namespace {

using testing::LoadGraph;
using testing::ParseOrDie;

bool HasCondition(const SatisfactionReport& r, const std::string& cond) {
  for (const auto& v : r.violations) {
    if (v.condition == cond) return true;
  }
  return false;
}

std::string Describe(const Interpretation& i, const SatisfactionReport& r) {
  std::string out;
  for (std::size_t k = 0; k < r.violations.size() && k < 10; ++k) {
    out += FormatViolation(i, r.violations[k]) + "\n";
  }
  return out;
}

Element E(const Interpretation& i, const char* name) { return *i.Find(name); }

// Denotes the vocabulary and puts it in ΔP; the rest is up to the fixture.
const char* kVocabulary =
    "R sp\nR sc\nR type\nR dom\nR range\nR cdisj\nR pdisj\n"
    "P sp\nP sc\nP type\nP dom\nP range\nP cdisj\nP pdisj\n";

TEST(ProjectTest, Sides) {
  std::set<ElementPair> ext{{1, 2}, {1, 3}};
  EXPECT_EQ(Project(ext, Side::kUp), (std::set<Element>{1}));
  EXPECT_EQ(Project(ext, Side::kDown), (std::set<Element>{2, 3}));
  EXPECT_TRUE(Project({}, Side::kUp).empty());
}

TEST(InterpretationTest, ComplementsComeInPairs) {
  Interpretation i;
  Element a = i.Intern("a");
  Element na = i.Intern("!a");
  EXPECT_EQ(Interpretation::Complement(a), na);
  EXPECT_EQ(Interpretation::Complement(na), a);
  EXPECT_EQ(i.Name(na), "!a");
  Element nb = i.Intern("!b");
  EXPECT_EQ(i.Name(Interpretation::Complement(nb)), "b");
  EXPECT_EQ(i.element_count(), 4u);
}

TEST(InterpretationTest, NegativeExtensionIsComplementsPositive) {
  Interpretation i = ParseInterpretation("P p\nR x\nR y\nP+ !p x y\n");
  Element p = E(i, "p");
  EXPECT_TRUE(i.HasPair(Interpretation::Complement(p), E(i, "x"), E(i, "y")));
  EXPECT_TRUE(i.Pairs(p).empty());
}

TEST(InterpretationTest, DenotationDefaultsAndNegation) {
  Interpretation i = ParseInterpretation("R e\nI a e\n");
  EXPECT_EQ(i.Denotation(Term::Iri("a")), E(i, "e"));
  EXPECT_EQ(i.Denotation(Term::Iri("a").Negated()), E(i, "!e"));
  EXPECT_EQ(i.Denotation(Term::Iri("e")), E(i, "e"));
  EXPECT_FALSE(i.Denotation(Term::Iri("zzz")));
}

TEST(FixtureTest, RoundTrip) {
  std::string text = std::string(kVocabulary) +
                     "R a\nR \"x y\"\nL \"x y\"\nC c\nR c\nP p\n"
                     "P+ p a \"x y\"\nC+ c a\nI _:b a\n";
  Interpretation i = ParseInterpretation(text);
  std::string once = SerializeInterpretation(i);
  EXPECT_EQ(SerializeInterpretation(ParseInterpretation(once)), once);
  EXPECT_NE(once.find("R !c"), std::string::npos);
  EXPECT_NE(once.find("P+ p a \"x y\""), std::string::npos);
}

TEST(FixtureTest, ErrorsCarryLineNumbers) {
  for (auto [text, line] : {std::pair{"R a\nX b\n", "line 2"},
                            std::pair{"P+ p a\n", "line 1"},
                            std::pair{"R a\n\nI *c e\n", "line 3"},
                            std::pair{"R \"open\n", "line 1"}}) {
    try {
      ParseInterpretation(text);
      ADD_FAILURE() << text;
    } catch (const InterpretationFormatError& e) {
      EXPECT_NE(std::string(e.what()).find(line), std::string::npos) << e.what();
    }
  }
}

// Hand-built countermodels, one condition each.

TEST(CheckModelTest, DisjointnessMustBeSymmetric) {
  Interpretation i = ParseInterpretation(std::string(kVocabulary) +
                                         "C c\nC d\nR c\nR d\nP+ cdisj c d\n"
                                         "P+ sc c !d\n");
  SatisfactionReport r = CheckModel(i, Graph{});
  ASSERT_FALSE(r.satisfied);
  EXPECT_TRUE(HasCondition(r, "Disjointness I.3.Symmetry")) << Describe(i, r);
  // Adding the mirror image plus what it forces repairs it.
  i.AddPair(E(i, "cdisj"), E(i, "d"), E(i, "c"));
  i.AddPair(E(i, "sc"), E(i, "d"), E(i, "!c"));
  i.AddPair(E(i, "sc"), E(i, "c"), E(i, "!d"));
  i.AddPair(E(i, "sc"), E(i, "d"), E(i, "!c"));
  r = CheckModel(i, Graph{});
  EXPECT_FALSE(HasCondition(r, "Disjointness I.3.Symmetry")) << Describe(i, r);
}

TEST(CheckModelTest, SelfDisjointClassIsExhaustive) {
  Interpretation i = ParseInterpretation(std::string(kVocabulary) +
                                         "C c\nC d\nR c\nR d\nP+ cdisj c c\n");
  SatisfactionReport r = CheckModel(i, Graph{});
  EXPECT_TRUE(HasCondition(r, "Disjointness I.3.Exhaustive"));
  bool names_d = false;
  for (const auto& v : r.violations) {
    if (v.condition == "Disjointness I.3.Exhaustive" && v.elements[1] == E(i, "d")) {
      names_d = true;
    }
  }
  EXPECT_TRUE(names_d);
}

TEST(CheckModelTest, InvariantFailuresAreTheirOwnClass) {
  Interpretation i = ParseInterpretation(std::string(kVocabulary) + "C c\n");
  SatisfactionReport r = CheckModel(i, Graph{});
  EXPECT_TRUE(HasCondition(r, "Interpretation.3"));  // ΔC ⊄ ΔR
  Interpretation j = ParseInterpretation(std::string(kVocabulary));
  j.Add(Interpretation::kP, j.Intern("q"));  // no complement
  EXPECT_TRUE(HasCondition(CheckModel(j, Graph{}), "Interpretation.4"));
  Interpretation k = ParseInterpretation("R a\n");  // vocabulary undenoted
  EXPECT_TRUE(HasCondition(CheckModel(k, Graph{}), "Interpretation.8"));
}

TEST(CheckModelTest, SubpropertyNeedsContrapositive) {
  Interpretation i = ParseInterpretation(std::string(kVocabulary) +
                                         "P p\nP q\nR p\nR q\nP+ sp p q\n");
  SatisfactionReport r = CheckModel(i, Graph{});
  EXPECT_TRUE(HasCondition(r, "Subproperty.3"));
  EXPECT_TRUE(HasCondition(r, "Disjointness II.4"));
}

TEST(CheckModelTest, DomainNegativeIsBoundedByProjection) {
  // (p dom c), x ∉ c, and (z, y) ∈ p: then (x, y) ∈ 〚p〛−. No other y is
  // constrained.
  const std::string base = std::string(kVocabulary) +
                           "P p\nC c\nR p\nR c\nR x\nR y\nR z\nR w\n"
                           "P+ dom p c\nP+ p z y\nC+ c z\nC+ !c x\n"
                           "P+ type z c\nP+ type x !c\n";
  Interpretation i = ParseInterpretation(base);
  SatisfactionReport r = CheckModel(i, Graph{});
  EXPECT_TRUE(HasCondition(r, "Typing I.4")) << Describe(i, r);
  Interpretation j = ParseInterpretation(base + "P+ !p x y\n");
  SatisfactionReport rj = CheckModel(j, Graph{});
  EXPECT_TRUE(rj.satisfied) << Describe(j, rj);
}

TEST(CheckModelTest, StarTriplesAreBoundedUniversals) {
  const std::string base = std::string(kVocabulary) +
                           "P p\nC c\nR p\nR c\nR s\nR y1\nR y2\n"
                           "C+ c y1\nP+ type y1 c\n";
  Graph g = ParseOrDie("s p *c .");
  Interpretation i = ParseInterpretation(base);
  EXPECT_TRUE(HasCondition(CheckModel(i, g), "Simple.2"));
  Interpretation j = ParseInterpretation(base + "P+ p s y1\n");
  EXPECT_TRUE(CheckModel(j, g).satisfied);
  // A known non-p neighbour must be a known non-c.
  Interpretation k = ParseInterpretation(base + "P+ p s y1\nP+ !p s y2\n");
  EXPECT_TRUE(HasCondition(CheckModel(k, g), "Simple.4"));
  Interpretation l = ParseInterpretation(
      base + "P+ p s y1\nP+ !p s y2\nC+ !c y2\nP+ type y2 !c\n");
  EXPECT_TRUE(CheckModel(l, g).satisfied) << Describe(l, CheckModel(l, g));
}

TEST(CheckModelTest, BlanksAreExistential) {
  Interpretation i = ParseInterpretation(std::string(kVocabulary) +
                                         "P p\nR p\nR a\nR b\nR c\nP+ p a b\n");
  EXPECT_TRUE(CheckModel(i, ParseOrDie("a p _:x .")).satisfied);
  EXPECT_TRUE(CheckModel(i, ParseOrDie("_:x p _:y .")).satisfied);
  SatisfactionReport r = CheckModel(i, ParseOrDie("_:x p _:x ."));
  EXPECT_TRUE(HasCondition(r, "Simple.1"));
  // A denoted blank is not existential.
  i.Denote(Term::Blank("x"), E(i, "c"));
  EXPECT_FALSE(CheckModel(i, ParseOrDie("a p _:x .")).satisfied);
}

// Canonical model.

TEST(CanonicalModelTest, MorphineIsANonAntipyretic) {
  Graph g = LoadGraph("medical_neg.rnt");
  Interpretation i = BuildCanonicalModel(g).model;
  EXPECT_TRUE(i.HasMember(E(i, "!antipyretic"), E(i, "morphine")));
  EXPECT_TRUE(i.HasMember(Interpretation::Complement(E(i, "antipyretic")),
                          E(i, "morphine")));
}

TEST(CanonicalModelTest, ModelOfFixtures) {
  for (const char* f : {"medical.rnt", "medical_neg.rnt"}) {
    Graph g = LoadGraph(f);
    CanonicalModel cm = BuildCanonicalModel(g);
    SatisfactionReport r = CheckModel(cm.model, g);
    EXPECT_TRUE(r.satisfied) << f << "\n" << Describe(cm.model, r);
  }
}

TEST(CanonicalModelTest, PlainRdfGraphNeedsNoCompletion) {
  // Without disjointness and negation the construction is a model as is.
  Graph g = LoadGraph("medical.rnt");
  CanonicalModelOptions o;
  o.complete = false;
  CanonicalModel cm = BuildCanonicalModel(g, o);
  EXPECT_TRUE(CheckModel(cm.model, g).satisfied)
      << Describe(cm.model, CheckModel(cm.model, g));
  EXPECT_EQ(BuildCanonicalModel(g).completion_facts, 0u);
}

TEST(CanonicalModelTest, EmptyGraph) {
  CanonicalModel cm = BuildCanonicalModel(Graph{});
  const Interpretation& i = cm.model;
  EXPECT_EQ(i.Members(Interpretation::kR).size(), 14u);  // ρdf⊥ and complements
  EXPECT_TRUE(i.Members(Interpretation::kC).empty());
  for (const auto& [p, ext] : i.property_extensions()) EXPECT_TRUE(ext.empty());
  EXPECT_TRUE(i.class_extensions().empty());
  EXPECT_TRUE(CheckModel(i, Graph{}).satisfied);
  EXPECT_EQ(cm.completion_facts, 0u);
}

TEST(CanonicalModelTest, TypeTriple) {
  Graph g = ParseOrDie("a type c .");
  Interpretation i = BuildCanonicalModel(g).model;
  EXPECT_EQ(i.Extension(E(i, "c")), (std::set<Element>{E(i, "a")}));
  EXPECT_TRUE(i.HasPair(E(i, "type"), E(i, "a"), E(i, "c")));
  EXPECT_TRUE(CheckModel(i, g).satisfied);
}

TEST(CanonicalModelTest, NoExFalsoQuodlibet) {
  Graph g = ParseOrDie("a type b .\na type c .\nb cdisj c .");
  Interpretation i = BuildCanonicalModel(g).model;
  EXPECT_TRUE(CheckModel(i, g).satisfied);
  // Membership stays local: a is in b and in ¬b, nothing else leaks in.
  EXPECT_TRUE(i.HasMember(E(i, "!b"), E(i, "a")));
  EXPECT_FALSE(i.HasMember(E(i, "b"), E(i, "c")));
}

TEST(CanonicalModelTest, SelfDisjointPropertyNeedsCompletion) {
  // ⊥p exhaustiveness reaches vocabulary members of ΔP, which no
  // well-formed triple can express.
  Graph g = ParseOrDie("p pdisj p .\na sp b .");
  CanonicalModelOptions o;
  o.complete = false;
  CanonicalModel bare = BuildCanonicalModel(g, o);
  SatisfactionReport r = CheckModel(bare.model, g);
  EXPECT_TRUE(HasCondition(r, "Disjointness I.4.Exhaustive")) << Describe(bare.model, r);
  CanonicalModel full = BuildCanonicalModel(g);
  EXPECT_GT(full.completion_facts, 0u);
  EXPECT_TRUE(CheckModel(full.model, g).satisfied)
      << Describe(full.model, CheckModel(full.model, g));
}

TEST(IsSatisfiableTest, Examples) {
  for (Graph g : {ParseOrDie("a type b .\na type !b ."), Graph{},
                  LoadGraph("medical_neg.rnt")}) {
    Satisfiability s = IsSatisfiable(g);
    EXPECT_TRUE(s.satisfiable);
    EXPECT_TRUE(CheckModel(s.witness, g).satisfied);
  }
}

TEST(LeastModelTest, ContainedInCanonicalModel) {
  // The least model is a model of G built without the rules; every fact
  // in it is forced, so the canonical model must contain it.
  Graph g = LoadGraph("medical_neg.rnt");
  Interpretation least = LeastModel(g);
  EXPECT_TRUE(CheckModel(least, g).satisfied)
      << Describe(least, CheckModel(least, g));
  Interpretation cm = BuildCanonicalModel(g).model;
  for (const auto& [p, ext] : least.property_extensions()) {
    for (const auto& [s, o] : ext) {
      EXPECT_TRUE(cm.HasPair(E(cm, least.Name(p).c_str()), E(cm, least.Name(s).c_str()),
                             E(cm, least.Name(o).c_str())))
          << least.Name(s) << " " << least.Name(p) << " " << least.Name(o);
    }
  }
}

// Properties over random graphs.

RandomGraphOptions SmallGraphs() {
  RandomGraphOptions opt;
  opt.triples = 8;
  opt.individuals = 3;
  opt.classes = 3;
  opt.properties = 2;
  opt.star = 0.15;
  return opt;
}

// Star-free closure triples with some terms replaced by blanks, plus
// random star-free triples over g's universe.
Graph RandomStarFreeQuery(std::mt19937_64& rng, const Graph& g, const Graph& cl) {
  std::vector<Triple> pool;
  for (const Triple& t : cl) {
    if (!t.s.is_star() && !t.o.is_star()) pool.push_back(t);
  }
  std::vector<Term> terms;
  for (Term t : g.universe()) {
    if (!t.is_star()) terms.push_back(t);
  }
  GraphBuilder b;
  for (int k = 0; k < 2; ++k) {
    Triple t;
    if (!pool.empty() && rng() % 2) {
      t = pool[rng() % pool.size()];
    } else {
      t = {terms[rng() % terms.size()], terms[rng() % terms.size()],
           terms[rng() % terms.size()]};
    }
    Term blanks[] = {Term::Blank("x"), Term::Blank("y")};
    if (!t.s.is_vocabulary() && rng() % 3 == 0) t.s = blanks[rng() % 2];
    if (!t.o.is_vocabulary() && rng() % 3 == 0) t.o = blanks[rng() % 2];
    if (IsValidTriple(t)) b.Add(t);
  }
  return std::move(b).Build();
}

TEST(SemanticsPropertyTest, ClosureIsSatisfiedByCanonicalAndLeastModels) {
  RandomGraphOptions opt = SmallGraphs();
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Graph g = RandomGraph(opt, seed);
    ClosureResult cl = Closure(g, Mode::kFull);
    Interpretation cm = BuildCanonicalModel(g).model;
    Interpretation least = LeastModel(g);
    ModelChecker check_cm(cm), check_least(least);
    ASSERT_TRUE(check_cm.graph_independent().satisfied)
        << "seed " << seed << "\n" << Describe(cm, check_cm.graph_independent());
    ASSERT_TRUE(check_least.graph_independent().satisfied) << "seed " << seed;
    for (const Triple& t : cl.closure) {
      Graph one{t};
      EXPECT_TRUE(check_cm.Satisfies(one)) << "seed " << seed << " " << ToString(t);
      SatisfactionReport r = check_least.Check(one);
      EXPECT_TRUE(r.satisfied) << "seed " << seed << " " << ToString(t) << "\n"
                               << Describe(least, r) << SerializeGraph(g);
    }
  }
}

TEST(SemanticsPropertyTest, SaltedGraphsAreSatisfiable) {
  RandomGraphOptions opt = SmallGraphs();
  opt.salted = true;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = RandomGraph(opt, seed);
    Satisfiability s = IsSatisfiable(g);
    EXPECT_TRUE(s.satisfiable) << "seed " << seed;
  }
}

TEST(SemanticsPropertyTest, ExhaustiveDisjointnessInCanonicalModels) {
  RandomGraphOptions opt = SmallGraphs();
  opt.salted = true;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Interpretation i = BuildCanonicalModel(RandomGraph(opt, seed)).model;
    Element cdisj = E(i, "cdisj");
    for (const auto& [c, d] : i.Pairs(cdisj)) {
      if (c != d) continue;
      for (Element x : i.Members(Interpretation::kC)) {
        EXPECT_TRUE(i.HasPair(cdisj, c, x)) << i.Name(c) << " " << i.Name(x);
      }
    }
  }
}

bool HasSelfDisjointTerm(const Graph& g) {
  for (const Triple& t : g) {
    if ((t.p == vocab::kDisjC || t.p == vocab::kDisjP) && t.s == t.o) return true;
  }
  return false;
}

// A self-disjoint class or property is disjoint from every member of its
// domain, vocabulary included; the resulting facts have no triple form, so
// such graphs are left out here.
TEST(SemanticsPropertyTest, NonEntailedStarFreeQueriesAreRefuted) {
  RandomGraphOptions opt = SmallGraphs();
  int refuted = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Graph g = RandomGraph(opt, seed);
    ClosureResult cl = Closure(g, Mode::kFull);
    if (HasSelfDisjointTerm(cl.closure)) continue;
    std::mt19937_64 rng(seed ^ 0x5eed);
    Graph h = RandomStarFreeQuery(rng, g, cl.closure);
    if (h.empty() || Entails(cl, h).holds()) continue;
    ++refuted;
    EXPECT_FALSE(CheckModel(BuildCanonicalModel(g).model, h).satisfied)
        << "seed " << seed << "\nG:\n" << SerializeGraph(g) << "H:\n" << SerializeGraph(h);
    EXPECT_FALSE(CheckModel(LeastModel(g), h).satisfied) << "seed " << seed;
  }
  EXPECT_GT(refuted, 60);
}

TEST(SemanticsPropertyTest, SelfDisjointPropertyEntailsBeyondTheRules) {
  // p ⊥p p forces p ⊥p type, hence (p sp ¬type) and (type sp ¬p): every
  // typing becomes a ¬p pair. None of that is derivable.
  Graph g = ParseOrDie("p pdisj p .\na type c .");
  Graph h = ParseOrDie("a !p c .");
  EXPECT_FALSE(Entails(g, h).holds());
  EXPECT_TRUE(CheckModel(LeastModel(g), h).satisfied);
}

}  // namespace
}  // namespace rhodf
