#include "rhodf/reasoner.h"

#include <gtest/gtest.h>

#include "rhodf/generators.h"
#include "rhodf/parser.h"
#include "testing/fixtures.h"
#include "testing/naive_closure.h"

namespace rhodf {
namespace {

using testing::NaiveClosure;
using testing::ParseOrDie;

Term I(const char* s) { return Term::Iri(s); }
Term N(const char* s) { return Term::Iri(s).Negated(); }

std::vector<Triple> Conclusions(const std::vector<ProofStep>& steps) {
  std::vector<Triple> out;
  for (const auto& s : steps) out.push_back(s.conclusion);
  return out;
}

TEST(RuleIdTest, NamesRoundTrip) {
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    auto r = static_cast<RuleId>(i);
    EXPECT_EQ(ParseRuleId(RuleName(r)), r);
  }
  EXPECT_FALSE(ParseRuleId("9z"));
  int rdf = 0;
  for (std::size_t i = 0; i < kRuleCount; ++i) rdf += IsRdfRule(static_cast<RuleId>(i));
  EXPECT_EQ(rdf, 10);
}

TEST(RecognizeDomainsTest, ClassTermsOfNegationFixture) {
  Domains d = RecognizeDomains(testing::LoadGraph("medical_neg.rnt"));
  for (const char* c : {"antipyretic", "treatment", "drugTreatment", "illness",
                        "opioid", "tumour"}) {
    EXPECT_TRUE(d.IsClass(I(c))) << c;
    EXPECT_TRUE(d.IsClass(N(c))) << c;
  }
  EXPECT_FALSE(d.IsClass(I("morphine")));
  EXPECT_TRUE(d.IsProperty(I("hasDrugTreatment")));
  EXPECT_TRUE(d.IsProperty(N("hasTreatment")));
  EXPECT_TRUE(d.IsProperty(I("hasTreatment")));
}

TEST(RecognizeDomainsTest, EmptyGraphHasOnlyVocabulary) {
  Domains d = RecognizeDomains(Graph{});
  EXPECT_TRUE(d.class_terms.empty());
  EXPECT_EQ(d.property_terms.size(), 7u);
}

TEST(RecognizeDomainsTest, TypeObjectIsClass) {
  Domains d = RecognizeDomains(Graph{{I("a"), vocab::kType, I("c")}});
  EXPECT_EQ(d.class_terms, (std::vector<Term>{I("c"), N("c")}));
  EXPECT_TRUE(d.IsProperty(vocab::kType));
}

TEST(InstantiateTest, DisjointnessToSubclassOfComplement) {
  Graph g{{I("opioid"), vocab::kDisjC, I("antipyretic")}};
  auto steps = Instantiate(RuleId::k6d, g, RecognizeDomains(g));
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(steps[0].conclusion, (Triple{I("opioid"), vocab::kSc, N("antipyretic")}));
  EXPECT_EQ(steps[0].premises, std::vector<Triple>(g.begin(), g.end()));
}

TEST(InstantiateTest, TypeInheritance) {
  Graph g{{I("opioid"), vocab::kSc, N("antipyretic")},
          {I("morphine"), vocab::kType, I("opioid")}};
  auto steps = Instantiate(RuleId::k3b, g, RecognizeDomains(g));
  EXPECT_EQ(Conclusions(steps),
            (std::vector<Triple>{{I("morphine"), vocab::kType, N("antipyretic")}}));
}

TEST(InstantiateTest, SubpropertyContrapositive) {
  Graph g{{I("hasDrugTreatment"), vocab::kSp, I("hasTreatment")}};
  auto steps = Instantiate(RuleId::k2c, g, RecognizeDomains(g));
  EXPECT_EQ(Conclusions(steps), (std::vector<Triple>{
                                    {N("hasTreatment"), vocab::kSp, N("hasDrugTreatment")}}));
}

TEST(InstantiateTest, SkipsConclusionsAlreadyPresent) {
  Graph g{{I("a"), vocab::kSc, I("b")}, {N("b"), vocab::kSc, N("a")}};
  EXPECT_TRUE(Instantiate(RuleId::k3c, g, RecognizeDomains(g)).empty());
}

TEST(InstantiateTest, SelfDisjointnessRangesOverClassTerms) {
  Graph g{{I("a"), vocab::kDisjC, I("a")}, {I("x"), vocab::kType, I("c")}};
  auto steps = Instantiate(RuleId::k6c, g, RecognizeDomains(g));
  EXPECT_EQ(Conclusions(steps),
            (std::vector<Triple>{{I("a"), vocab::kDisjC, N("a")},
                                 {I("a"), vocab::kDisjC, I("c")},
                                 {I("a"), vocab::kDisjC, N("c")}}));
}

TEST(InstantiateTest, StarRules) {
  Graph g = ParseOrDie("x !p *c .\nd sc c .\ny type c .\nx p y .\n*c q z .");
  auto concl = [&](RuleId r) { return Conclusions(Instantiate(r, g, RecognizeDomains(g))); };
  EXPECT_EQ(concl(RuleId::k3d), (std::vector<Triple>{{I("x"), N("p"), Term::Star(I("d"))}}));
  EXPECT_EQ(concl(RuleId::k3e), (std::vector<Triple>{{Term::Star(I("d")), I("q"), I("z")}}));
  EXPECT_EQ(concl(RuleId::k4e), (std::vector<Triple>{{I("x"), N("p"), I("y")}}));
  EXPECT_EQ(concl(RuleId::k4f), (std::vector<Triple>{{I("y"), I("q"), I("z")}}));
  // (x ¬p ⋆c) and (x p y): y is not a c.
  EXPECT_EQ(concl(RuleId::k4g), (std::vector<Triple>{{I("y"), vocab::kType, N("c")}}));
}

TEST(InstantiateTest, NegativeDomainRule) {
  Graph g = ParseOrDie("d dom b .\nx type !b .\nz d y .");
  EXPECT_EQ(Conclusions(Instantiate(RuleId::k4c, g, RecognizeDomains(g))),
            (std::vector<Triple>{{I("x"), N("d"), I("y")}}));
  Graph h = ParseOrDie("d range b .\ny type !b .\nx d z .");
  EXPECT_EQ(Conclusions(Instantiate(RuleId::k4d, h, RecognizeDomains(h))),
            (std::vector<Triple>{{I("x"), N("d"), I("y")}}));
}

TEST(InstantiateTest, DisjointDomainsGiveDisjointProperties) {
  Graph g = ParseOrDie("p dom c .\nq dom d .\nc cdisj d .");
  EXPECT_EQ(Conclusions(Instantiate(RuleId::k8a, g, RecognizeDomains(g))),
            (std::vector<Triple>{{I("p"), vocab::kDisjP, I("q")}}));
}

TEST(ClosureTest, RdfModeOnMedicalFixture) {
  ClosureResult r = Closure(testing::LoadGraph("medical.rnt"), Mode::kRdf);
  EXPECT_TRUE(r.closure.contains({I("morphine"), vocab::kType, I("drugTreatment")}));
  EXPECT_TRUE(r.closure.contains({I("brainTumour"), vocab::kType, I("illness")}));
  for (const auto& [t, step] : r.provenance) EXPECT_TRUE(IsRdfRule(step.rule));
}

TEST(ClosureTest, SingleSubclassTripleFullMode) {
  Graph g{{I("a"), vocab::kSc, I("b")}};
  Graph expect{{I("a"), vocab::kSc, I("b")},
               {N("b"), vocab::kSc, N("a")},
               {I("a"), vocab::kDisjC, N("b")},
               {N("b"), vocab::kDisjC, I("a")}};
  EXPECT_EQ(Closure(g).closure, expect);
}

TEST(ClosureTest, SingleDisjointnessTripleFullMode) {
  Graph g{{I("c"), vocab::kDisjC, I("d")}};
  Graph expect{{I("c"), vocab::kDisjC, I("d")},
               {I("d"), vocab::kDisjC, I("c")},
               {I("c"), vocab::kSc, N("d")},
               {I("d"), vocab::kSc, N("c")}};
  EXPECT_EQ(Closure(g).closure, expect);
}

TEST(ClosureTest, DisjointnessNotSubclassInRdfMode) {
  Graph g{{I("a"), vocab::kDisjC, I("b")}};
  EXPECT_FALSE(Closure(g, Mode::kRdf).closure.contains({I("a"), vocab::kSc, N("b")}));
  EXPECT_TRUE(Closure(g, Mode::kFull).closure.contains({I("a"), vocab::kSc, N("b")}));
}

TEST(ClosureTest, CubicFamilyDerivesAllInstancePairs) {
  Graph g = Cubic(4);
  ClosureResult r = Closure(g);
  int n = 0;
  for (int l = 1; l <= 4; ++l)
    for (int k = 1; k <= 4; ++k)
      for (int h = 1; h <= 4; ++h) {
        n += r.closure.contains({Term::Iri("a" + std::to_string(l)),
                                 Term::Iri("p" + std::to_string(k)),
                                 Term::Iri("a" + std::to_string(h))});
      }
  EXPECT_EQ(n, 64);
  EXPECT_EQ(r.closure.size(), 108u);  // n³ + 3n² − n
}

TEST(ClosureTest, SpChainCounts) {
  for (int n : {2, 5, 10}) {
    std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    EXPECT_EQ(Closure(SpChain(n), Mode::kRdf).closure.size(), pairs);
    // Full mode adds the contrapositive chain and p_i ⊥p ¬p_j.
    EXPECT_EQ(Closure(SpChain(n), Mode::kFull).closure.size(), 4 * pairs);
  }
}

TEST(ClosureTest, EmptyGraph) {
  ClosureResult r = Closure(Graph{});
  EXPECT_TRUE(r.closure.empty());
  EXPECT_TRUE(r.provenance.empty());
}

TEST(ClosureTest, ProvenanceCoversExactlyDerivedTriples) {
  Graph g = testing::LoadGraph("medical_neg.rnt");
  ClosureResult r = Closure(g);
  EXPECT_EQ(r.provenance.size(), r.closure.size() - g.size());
  for (const Triple& t : r.closure) {
    const ProofStep* step = r.ProvenanceOf(t);
    EXPECT_EQ(step == nullptr, g.contains(t)) << ToString(t);
    if (!step) continue;
    for (const Triple& p : step->premises) EXPECT_TRUE(r.closure.contains(p));
  }
  const ProofStep* s =
      r.ProvenanceOf({I("morphine"), vocab::kType, N("antipyretic")});
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->rule, RuleId::k3b);
}

TEST(ClosureTest, StarTypingUsesOnlyStarFreePremises) {
  // (ebola ¬hasTreatment ⋆treatment) must not type ebola via the range of
  // ¬hasTreatment: the star is a universal over treatments, not a resource.
  Graph g = ParseOrDie(
      "ebola !hasTreatment *treatment .\n!hasTreatment range treatment .\n"
      "!hasTreatment dom illness .\nparacetamol type treatment .");
  Graph cl = Closure(g).closure;
  EXPECT_TRUE(cl.contains({I("ebola"), N("hasTreatment"), I("paracetamol")}));
  EXPECT_TRUE(cl.contains({I("ebola"), vocab::kType, I("illness")}));
  EXPECT_FALSE(cl.contains({I("ebola"), vocab::kType, I("treatment")}));
  EXPECT_FALSE(cl.contains({I("ebola"), N("hasTreatment"), I("ebola")}));
}

TEST(ClosureTest, SelfDisjointComplementMakesEveryClassATreatment) {
  // In the negation fixture ¬treatment ⊆ ¬drugTreatment ⊆ treatment, so
  // ¬treatment is self-disjoint, hence disjoint from everything, hence every
  // class is a subclass of treatment. ebola is an illness and therefore
  // falls under the star.
  Graph g = testing::LoadGraph("medical_neg.rnt");
  ClosureResult r = Closure(g);
  EXPECT_TRUE(r.closure.contains({N("treatment"), vocab::kDisjC, N("treatment")}));
  EXPECT_TRUE(r.closure.contains({I("illness"), vocab::kSc, I("treatment")}));
  EXPECT_TRUE(r.closure.contains({I("ebola"), N("hasTreatment"), I("ebola")}));

  GraphBuilder b;
  for (const Triple& t : g) {
    if (t != Triple{N("drugTreatment"), vocab::kSc, I("treatment")}) b.Add(t);
  }
  Graph control = Closure(std::move(b).Build()).closure;
  EXPECT_FALSE(control.contains({I("illness"), vocab::kSc, I("treatment")}));
  EXPECT_FALSE(control.contains({I("ebola"), N("hasTreatment"), I("ebola")}));
  EXPECT_TRUE(control.contains({I("ebola"), N("hasTreatment"), I("paracetamol")}));
}

TEST(ClosureTest, TripleCapRaises) {
  ClosureOptions o;
  o.triple_cap = 50;
  EXPECT_THROW(Closure(Cubic(4), o), ResourceLimitError);
  o.triple_cap = 108;
  EXPECT_NO_THROW(Closure(Cubic(4), o));
  EXPECT_EQ(DefaultTripleCap(2), 1080u);
  EXPECT_EQ(DefaultTripleCap(std::size_t{1} << 40), std::numeric_limits<std::size_t>::max());
}

TEST(ClosureTest, StatsCountDerivations) {
  ClosureResult r = Closure(SpChain(10), Mode::kRdf);
  EXPECT_EQ(r.stats.derived[RuleIndex(RuleId::k2a)], 45u - 9u);
  EXPECT_GE(r.stats.iterations, 4u);
  EXPECT_GE(r.stats.fired[RuleIndex(RuleId::k2a)], r.stats.derived[RuleIndex(RuleId::k2a)]);
}

// Randomized properties against the naive oracle.

struct Scenario {
  const char* name;
  RandomGraphOptions options;
};

std::vector<Scenario> Scenarios() {
  RandomGraphOptions plain;
  plain.negation = 0;
  plain.star = 0;
  plain.disjointness = false;
  RandomGraphOptions neg;
  RandomGraphOptions stars;
  stars.star = 0.4;
  stars.triples = 12;
  RandomGraphOptions busy;
  busy.triples = 14;
  busy.blank = 0.2;
  busy.literal = 0.1;
  busy.classes = 4;
  busy.properties = 4;
  RandomGraphOptions salted = neg;
  salted.salted = true;
  return {{"plain", plain}, {"neg", neg}, {"stars", stars}, {"busy", busy},
          {"salted", salted}};
}

class ClosurePropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(ClosurePropertyTest, MatchesNaiveOracleBothModes) {
  for (const Scenario& sc : Scenarios()) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      Graph g = RandomGraph(sc.options, seed * 31 + GetParam());
      for (Mode m : {Mode::kRdf, Mode::kFull}) {
        Graph fast = Closure(g, m).closure;
        Graph slow = NaiveClosure(g, m);
        ASSERT_EQ(fast, slow) << sc.name << " seed " << seed << " mode "
                              << (m == Mode::kRdf ? "rdf" : "full") << "\n"
                              << SerializeGraph(g);
      }
    }
  }
}

TEST_P(ClosurePropertyTest, AlgebraicLaws) {
  for (const Scenario& sc : Scenarios()) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Graph g = RandomGraph(sc.options, seed * 17 + GetParam());
      Graph full = Closure(g).closure;
      Graph rdf = Closure(g, Mode::kRdf).closure;
      SCOPED_TRACE(std::string(sc.name) + " seed " + std::to_string(seed));
      EXPECT_TRUE(g.IsSubsetOf(full));
      EXPECT_TRUE(rdf.IsSubsetOf(full));
      EXPECT_EQ(Closure(full).closure, full);
      EXPECT_EQ(Closure(rdf, Mode::kRdf).closure, rdf);

      // Monotone in the input.
      std::vector<Triple> half(g.begin(), g.begin() + g.size() / 2);
      EXPECT_TRUE(Closure(Graph(std::span<const Triple>(half))).closure.IsSubsetOf(full));

      for (const Triple& t : full) {
        auto flip = [](Term x) { return x.negatable() ? x.Negated() : x; };
        if (t.p == vocab::kSc && t.s.negatable() && t.o.negatable()) {
          EXPECT_TRUE(full.contains({flip(t.o), vocab::kSc, flip(t.s)})) << ToString(t);
        }
        if (t.p == vocab::kSp && t.s.negatable() && t.o.negatable()) {
          EXPECT_TRUE(full.contains({flip(t.o), vocab::kSp, flip(t.s)})) << ToString(t);
        }
        if (t.p == vocab::kDisjC || t.p == vocab::kDisjP) {
          EXPECT_TRUE(full.contains({t.o, t.p, t.s})) << ToString(t);
        }
        if (t.p == vocab::kDisjC && t.o.negatable()) {
          EXPECT_TRUE(full.contains({t.s, vocab::kSc, flip(t.o)})) << ToString(t);
        }
        if (t.p == vocab::kSc && t.o.negatable()) {
          EXPECT_TRUE(full.contains({t.s, vocab::kDisjC, flip(t.o)})) << ToString(t);
        }
      }
    }
  }
}

TEST_P(ClosurePropertyTest, ImplicitTypingRedundantOnGroundGraphs) {
  RandomGraphOptions opt;
  opt.triples = 14;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = RandomGraph(opt, seed * 7 + GetParam());
    ASSERT_TRUE(g.ground());
    ClosureOptions without;
    without.disabled_rules = {RuleId::k5a, RuleId::k5b};
    for (Mode m : {Mode::kRdf, Mode::kFull}) {
      without.mode = m;
      EXPECT_EQ(Closure(g, without).closure, Closure(g, m).closure) << seed;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ClosurePropertyTest, ::testing::Values(0, 1000));

}  // namespace
}  // namespace rhodf
