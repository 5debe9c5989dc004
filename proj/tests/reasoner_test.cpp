#include <gtest/gtest.h>

#include "owlport/errors.hpp"
#include "owlport/reasoner.hpp"
#include "oracles/naive_saturation.hpp"
#include "oracles/random_ontology.hpp"
#include "generators/chain_heavy.hpp"
#include "test_support.hpp"

using namespace owlport;
using testing_support::obo;

namespace {

Iri ex(const std::string& name) { return Iri("http://example.org/r#" + name); }
ClassExpression named(const std::string& name) { return ClassExpression::named(ex(name)); }

Ontology ontology_of(std::vector<Axiom> axioms) {
    Ontology ont;
    ont.document_uri = Iri("http://example.org/r");
    for (const auto& ax : axioms) {
        std::vector<Iri> found;
        if (auto* s = std::get_if<SubClassOf>(&ax)) {
            s->sub.collect_classes(found);
            s->sup.collect_classes(found);
        } else if (auto* e = std::get_if<EquivalentClasses>(&ax)) {
            for (const auto& x : e->exprs) x.collect_classes(found);
        }
        ont.classes.insert(found.begin(), found.end());
    }
    ont.axioms = std::move(axioms);
    return ont;
}

SaturationState saturate_ontology(const Ontology& ont) { return saturate(normalize(ont)); }

std::set<Iri> as_set(const std::vector<Iri>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Saturate, Transitivity) {
    auto st = saturate_ontology(ontology_of({SubClassOf{named("A"), named("B")}, SubClassOf{named("B"), named("C")}}));
    auto s = st.subsumers(ex("A"));
    EXPECT_TRUE(s.contains(ex("C")));
    EXPECT_TRUE(s.contains(ex("A")));
    EXPECT_TRUE(s.contains(vocab::top()));
}

TEST(Saturate, TetralogyIsInferredSubclassOfVsd) {
    auto ont = testing_support::load_fixture("hp.ofn", "http://purl.obolibrary.org/obo/hp.owl");
    // No asserted edge from ToF to VSD.
    for (const auto& ax : ont.axioms)
        if (auto* s = std::get_if<SubClassOf>(&ax)) EXPECT_FALSE(s->sub.is_named() && s->sub.iri() == obo("HP_0001636"));
    auto st = saturate_ontology(ont);
    auto s = st.subsumers(obo("HP_0001636"));
    for (const char* id : {"HP_0001629", "HP_0002623", "HP_0001642", "HP_0001667", "HP_0001627"})
        EXPECT_TRUE(s.contains(obo(id))) << id;
    EXPECT_TRUE(st.subsumers(obo("HP_0031662")).contains(obo("HP_0001629")));
}

TEST(Saturate, BottomPropagatesThroughLinks) {
    auto st = saturate_ontology(ontology_of({
        SubClassOf{named("A"), ClassExpression::some(ex("r"), named("B"))},
        SubClassOf{named("B"), ClassExpression::bottom()},
    }));
    EXPECT_TRUE(st.subsumers(ex("A")).contains(vocab::bottom()));
    EXPECT_EQ(unsatisfiable_classes(st), (std::set<Iri>{ex("A"), ex("B")}));
}

TEST(Saturate, RoleHierarchyAndChains) {
    auto ont = ontology_of({
        SubClassOf{named("A"), ClassExpression::some(ex("r"), named("B"))},
        SubClassOf{named("B"), ClassExpression::some(ex("s"), named("C"))},
        PropertyChain{{ex("r"), ex("s")}, ex("t")},
        SubPropertyOf{ex("t"), ex("u")},
        SubClassOf{ClassExpression::some(ex("u"), named("C")), named("D")},
    });
    auto st = saturate_ontology(ont);
    EXPECT_TRUE(st.subsumers(ex("A")).contains(ex("D")));
    EXPECT_FALSE(st.subsumers(ex("B")).contains(ex("D")));
    EXPECT_TRUE(st.links(ex("u")).contains({ex("A"), ex("C")}));
}

TEST(Unsatisfiable, Examples) {
    EXPECT_TRUE(unsatisfiable_classes(saturate_ontology(ontology_of({SubClassOf{named("A"), named("B")}}))).empty());
    EXPECT_EQ(unsatisfiable_classes(
                  saturate_ontology(ontology_of({SubClassOf{named("A"), ClassExpression::bottom()}}))),
              std::set<Iri>{ex("A")});
    EXPECT_EQ(unsatisfiable_classes(saturate_ontology(ontology_of({
                  SubClassOf{named("B"), ClassExpression::some(ex("r"), named("A"))},
                  SubClassOf{named("A"), ClassExpression::bottom()},
              }))),
              (std::set<Iri>{ex("A"), ex("B")}));
}

TEST(Unsatisfiable, NboFixtureHasThreeIncoherentClasses) {
    auto ont = testing_support::load_fixture("nbo.ofn", "http://purl.obolibrary.org/obo/nbo.owl");
    auto nf = normalize(ont);
    auto st = saturate(nf);
    auto unsat = unsatisfiable_classes(st);
    // Oracle: naive fixpoint over the same normal form.
    auto naive = oracle::naive_saturate(nf);
    std::set<Iri> expected;
    for (const auto& c : ont.classes)
        if (naive.subsumers[c].contains(vocab::bottom())) expected.insert(c);
    EXPECT_EQ(unsat, expected);
    EXPECT_EQ(unsat, (std::set<Iri>{obo("NBO_0000900"), obo("NBO_0000901"), obo("NBO_0000902")}));
}

TEST(Taxonomy, EquivalentClassesShareANode) {
    auto ont = ontology_of({
        SubClassOf{named("A"), named("B")},
        SubClassOf{named("B"), named("A")},
        SubClassOf{named("B"), named("C")},
    });
    auto tax = build_taxonomy(saturate_ontology(ont), ont.classes);
    auto ab = tax.node_of(ex("A"));
    ASSERT_TRUE(ab);
    EXPECT_EQ(tax.node_of(ex("B")), ab);
    EXPECT_EQ(tax.nodes()[*ab].members, (std::vector<Iri>{ex("A"), ex("B")}));
    auto c = *tax.node_of(ex("C"));
    EXPECT_EQ(tax.direct_supers(*ab), std::set<std::size_t>{c});
    EXPECT_EQ(tax.direct_supers(c), std::set<std::size_t>{tax.top_node()});
}

TEST(Taxonomy, ChainIsTransitivelyReduced) {
    auto ont = ontology_of({SubClassOf{named("A"), named("B")}, SubClassOf{named("B"), named("C")}});
    auto tax = build_taxonomy(saturate_ontology(ont), ont.classes);
    auto a = *tax.node_of(ex("A"));
    auto b = *tax.node_of(ex("B"));
    EXPECT_EQ(tax.direct_supers(a), std::set<std::size_t>{b});
    EXPECT_EQ(tax.all_supers(ex("A")), (std::set<Iri>{ex("B"), ex("C"), vocab::top()}));
    EXPECT_EQ(tax.all_subs(ex("C")), (std::set<Iri>{ex("A"), ex("B")}));
}

TEST(Taxonomy, DisjointnessYieldsUnsatisfiableClass) {
    auto ont = ontology_of({
        SubClassOf{named("X"), named("Y")},
        SubClassOf{named("X"), named("Z")},
        SubClassOf{ClassExpression::conjunction({named("Y"), named("Z")}), ClassExpression::bottom()},
    });
    auto nf = normalize(ont);
    auto tax = build_taxonomy(saturate(nf), ont.classes);
    EXPECT_EQ(tax.unsatisfiable(), std::set<Iri>{ex("X")});
    EXPECT_FALSE(tax.node_of(ex("X")));
    auto naive = oracle::naive_saturate(nf);
    for (const auto& c : ont.classes)
        EXPECT_EQ(naive.subsumers[c].contains(vocab::bottom()), tax.unsatisfiable().contains(c));
}

TEST(Taxonomy, ClassEquivalentToTopJoinsTopNode) {
    auto ont = ontology_of({SubClassOf{ClassExpression::top(), named("Everything")}, SubClassOf{named("A"), named("B")}});
    auto tax = build_taxonomy(saturate_ontology(ont), ont.classes);
    EXPECT_EQ(tax.node_of(ex("Everything")), tax.top_node());
    EXPECT_EQ(tax.direct_supers(*tax.node_of(ex("B"))), std::set<std::size_t>{tax.top_node()});
}

namespace {

// n ∈ direct_super(m) iff n is strictly above m with nothing in between.
void expect_consistent_taxonomy(const Taxonomy& tax, const SaturationState& st) {
    const auto& nodes = tax.nodes();
    auto above = [&](std::size_t sup, std::size_t sub) {
        if (sup == sub) return false;
        for (const auto& x : nodes[sub].members)
            for (const auto& y : nodes[sup].members)
                if (!st.entails(x, y)) return false;
        return true;
    };
    for (std::size_t m = 0; m < nodes.size(); ++m) {
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            bool direct = above(n, m);
            for (std::size_t k = 0; direct && k < nodes.size(); ++k)
                if (above(k, m) && above(n, k)) direct = false;
            EXPECT_EQ(tax.direct_supers(m).contains(n), direct) << "nodes " << m << " -> " << n;
            EXPECT_EQ(tax.direct_subs(n).contains(m), direct);
        }
    }
}

}  // namespace

TEST(Taxonomy, ConsistentWithSubsumptionOnRandomOntologies) {
    for (std::uint32_t seed = 1; seed <= 60; ++seed) {
        oracle::RandomOntology gen(seed, {.classes = 12, .properties = 3, .axioms = 18});
        auto ont = gen.ontology();
        auto st = saturate_ontology(ont);
        auto tax = build_taxonomy(st, ont.classes);
        expect_consistent_taxonomy(tax, st);
        std::size_t placed = 0;
        for (const auto& node : tax.nodes()) placed += node.members.size();
        // Every satisfiable class once, plus owl:Thing.
        EXPECT_EQ(placed + tax.unsatisfiable().size(), ont.classes.size() + 1) << "seed " << seed;
    }
}

TEST(Saturate, MatchesNaiveOracle) {
    for (std::uint32_t seed = 1; seed <= 100; ++seed) {
        oracle::RandomOntology gen(seed, {.classes = 20, .properties = 4, .axioms = 40});
        auto nf = normalize(gen.ontology());
        auto st = saturate(nf);
        auto naive = oracle::naive_saturate(nf);
        EXPECT_EQ(st.subsumer_map(), naive.subsumers) << "seed " << seed;
    }
}

TEST(Saturate, ChainHeavyShapeMatchesNaiveOracle) {
    for (std::uint32_t seed : {1u, 2u, 3u}) {
        auto nf = normalize(generators::chain_heavy_ontology(
            {.classes = 120, .axioms = 240, .chain_length = 10, .upper_level = 20, .seed = seed}));
        auto st = saturate(nf);
        auto naive = oracle::naive_saturate(nf);
        EXPECT_EQ(st.subsumer_map(), naive.subsumers) << "seed " << seed;
        for (const auto& p : nf.properties) {
            std::set<std::pair<Iri, Iri>> expected;
            for (const auto& [r, a, b] : naive.links)
                if (r == p) expected.emplace(a, b);
            EXPECT_EQ(st.links(p), expected) << p.str();
        }
    }
}

TEST(Saturate, Deterministic) {
    oracle::RandomOntology gen(99, {.classes = 30, .properties = 5, .axioms = 60});
    auto nf = normalize(gen.ontology());
    EXPECT_EQ(saturate(nf).subsumer_map(), saturate(nf).subsumer_map());
}

// ---------------------------------------------------------------------------
// Query classification

TEST(QueryClassify, NamedClassMatchesTaxonomy) {
    auto ont = testing_support::load_fixture("hp.ofn", "http://purl.obolibrary.org/obo/hp.owl");
    auto st = saturate_ontology(ont);
    auto tax = build_taxonomy(st, ont.classes);
    for (const auto& c : ont.classes) {
        auto q = query_classify(st, ClassExpression::named(c));
        auto supers = tax.all_supers(c);
        supers.erase(vocab::top());
        EXPECT_EQ(as_set(q.superclasses), supers) << c.str();
        EXPECT_EQ(as_set(q.subclasses), tax.all_subs(c)) << c.str();
        EXPECT_EQ(q.equivalents, tax.equivalents(c)) << c.str();
    }
}

TEST(QueryClassify, FourPhenotypeConjunctionRetrievesTetralogy) {
    auto ont = testing_support::load_fixture("hp.ofn", "http://purl.obolibrary.org/obo/hp.owl");
    auto st = saturate_ontology(ont);
    auto expr = ClassExpression::conjunction({ClassExpression::named(obo("HP_0001629")),
                                              ClassExpression::named(obo("HP_0002623")),
                                              ClassExpression::named(obo("HP_0001642")),
                                              ClassExpression::named(obo("HP_0001667"))});
    auto q = query_classify(st, expr);
    EXPECT_EQ(q.equivalents, std::vector<Iri>{obo("HP_0001636")});
    EXPECT_EQ(q.subclasses, (std::vector<Iri>{obo("HP_0031662"), obo("HP_0031663")}));
    for (const auto& iri : q.superclasses) EXPECT_FALSE(vocab::is_fresh(iri));
}

TEST(QueryClassify, PartOfApoptosisMatchesOracle) {
    auto ont = testing_support::load_fixture("go.ofn", "http://purl.obolibrary.org/obo/go.owl");
    auto expr = ClassExpression::some(obo("BFO_0000050"), ClassExpression::named(obo("GO_0006915")));
    auto q = query_classify(saturate_ontology(ont), expr);

    // Oracle: add Q ≡ expr to the ontology and run the naive fixpoint.
    Ontology extended = ont;
    const Iri query_class("http://example.org/oracle#Q");
    extended.axioms.push_back(*make_equivalence({ClassExpression::named(query_class), expr}));
    auto naive = oracle::naive_saturate(normalize(extended));
    std::set<Iri> expected;
    for (const auto& c : ont.classes)
        if (naive.subsumers[c].contains(query_class) && !naive.subsumers[query_class].contains(c)) expected.insert(c);
    EXPECT_EQ(as_set(q.subclasses), expected);
    EXPECT_EQ(as_set(q.subclasses), (std::set<Iri>{obo("GO_0006309"), obo("GO_0030262"), obo("GO_0097190"),
                                                   obo("GO_0097194")}));
}

TEST(QueryClassify, RegulationChainIsInferred) {
    auto ont = testing_support::load_fixture("go.ofn", "http://purl.obolibrary.org/obo/go.owl");
    auto st = saturate_ontology(ont);
    auto q = query_classify(st, ClassExpression::named(obo("GO_0042981")));
    EXPECT_EQ(q.subclasses, std::vector<Iri>{obo("GO_0043065")});
}

TEST(QueryClassify, UnknownEntity) {
    auto st = saturate_ontology(ontology_of({SubClassOf{named("A"), named("B")}}));
    EXPECT_THROW(query_classify(st, named("Nope")), UnknownEntity);
    EXPECT_THROW(query_classify(st, ClassExpression::some(ex("nope"), named("A"))), UnknownEntity);
}

TEST(QueryClassify, TopAndBottomOnlyWithFlag) {
    auto st = saturate_ontology(ontology_of({
        SubClassOf{named("A"), named("B")},
        SubClassOf{named("U"), named("B")},
        SubClassOf{named("U"), ClassExpression::bottom()},
    }));
    auto plain = query_classify(st, named("B"));
    EXPECT_EQ(plain.subclasses, std::vector<Iri>{ex("A")});
    EXPECT_TRUE(plain.superclasses.empty());
    auto flagged = query_classify(st, named("B"), {.include_top_bottom = true});
    EXPECT_EQ(as_set(flagged.subclasses), (std::set<Iri>{ex("A"), ex("U"), vocab::bottom()}));
    EXPECT_EQ(flagged.superclasses, std::vector<Iri>{vocab::top()});

    auto unsat = query_classify(st, named("U"));
    EXPECT_EQ(unsat.equivalents, std::vector<Iri>{ex("U")});
    EXPECT_TRUE(unsat.subclasses.empty());
}

TEST(QueryClassify, RandomExpressionsAgreeWithOracleAndStayHygienic) {
    for (std::uint32_t seed = 1; seed <= 60; ++seed) {
        oracle::RandomOntology gen(seed, {.classes = 12, .properties = 3, .axioms = 20});
        auto ont = gen.ontology();
        auto st = saturate_ontology(ont);
        auto expr = gen.expression(2);

        auto q = query_classify(st, expr);
        Ontology extended = ont;
        const Iri query_class("http://example.org/oracle#Q");
        if (auto eq = make_equivalence({ClassExpression::named(query_class), expr})) extended.axioms.push_back(*eq);
        auto naive = oracle::naive_saturate(normalize(extended));
        const auto& sq = naive.subsumers[query_class];
        if (sq.contains(vocab::bottom())) continue;  // covered by TopAndBottomOnlyWithFlag
        std::set<Iri> subs, supers, equivs;
        for (const auto& c : ont.classes) {
            const auto& sc = naive.subsumers[c];
            bool below = sc.contains(query_class), above = sq.contains(c);
            if (below && above) equivs.insert(c);
            else if (below && !sc.contains(vocab::bottom())) subs.insert(c);
            else if (above) supers.insert(c);
        }
        EXPECT_EQ(as_set(q.equivalents), equivs) << "seed " << seed;
        EXPECT_EQ(as_set(q.subclasses), subs) << "seed " << seed;
        EXPECT_EQ(as_set(q.superclasses), supers) << "seed " << seed;
        for (const auto* set : {&q.equivalents, &q.subclasses, &q.superclasses})
            for (const auto& iri : *set) EXPECT_FALSE(vocab::is_fresh(iri));
    }
}

TEST(QueryClassify, SubclassAnswersAreMonotone) {
    for (std::uint32_t seed = 1; seed <= 20; ++seed) {
        oracle::RandomOntology gen(seed, {.classes = 15, .properties = 3, .axioms = 25});
        auto ont = gen.ontology();
        auto st = saturate_ontology(ont);
        for (const auto& a : ont.classes) {
            auto subs_a = as_set(query_classify(st, ClassExpression::named(a)).subclasses);
            for (const auto& b : subs_a) {
                auto subs_b = query_classify(st, ClassExpression::named(b)).subclasses;
                for (const auto& c : subs_b) EXPECT_TRUE(subs_a.contains(c));
            }
        }
    }
}
