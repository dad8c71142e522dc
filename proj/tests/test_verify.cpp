#include <doctest.h>

#include "ldg/eval.hpp"
#include "ldg/gen.hpp"
#include "ldg/parse.hpp"
#include "ldg/print.hpp"
#include "ldg/subst.hpp"
#include "ldg/verify.hpp"

using namespace ldg;

namespace {

RuleSet servernet_rules() {
    return parse_rules(R"rr(
rule r0 {
  lhs { nodes: i [Client], j ["Proxy and (< 2 inv C2P top)"]; edges: i -Request-> j }
  rhs { del_E(i,j,Request); add_E(i,j,C2P) }
}
rule r1 {
  lhs { nodes: i [Client], j ["Proxy and (>= 2 inv C2P top)"]; edges: i -Request-> j }
  rhs { cl(j,k,{},{Request},{},{},{}); del_E(i,j,Request); add_E(i,k,C2P) }
}
)rr");
}

Specification servernet_spec() {
    Specification sp;
    sp.logic = LogicKind::Dl;
    sp.rules = servernet_rules();
    sp.strategy = s_choice(s_rule("r0"), s_rule("r1"));
    sp.pre = Formula::of(parse_concept(
        "(exists U . (Client and exists Request . Proxy)) and "
        "(forall U . (Proxy => (< 3 inv C2P top)))"));
    sp.post = Formula::of(parse_concept("forall U . (Proxy => (< 3 inv C2P top))"));
    return sp;
}

RuleSet toy_rules() {
    return parse_rules(R"rr(
rule del { lhs { nodes: x [A] } rhs { del_N(x) } }
rule tag { lhs { nodes: x [A] } rhs { add_C(x,B) } }
)rr");
}

const ActionKind kAllKinds[] = {ActionKind::AddNode,  ActionKind::DelNode,
                                ActionKind::AddLabel, ActionKind::DelLabel,
                                ActionKind::AddEdge,  ActionKind::DelEdge,
                                ActionKind::Redirect, ActionKind::Merge,
                                ActionKind::Clone};

}  // namespace

TEST_CASE("wp of an action wraps substitutions right to left") {
    Formula q = Formula::of(parse_concept("A"));
    CHECK(formula_equal(wp_action({}, q), q));

    Action a = Action::del_label(node("i"), "A");
    Action b = Action::add_label(node("i"), "A");
    Formula one = wp_action({a}, q);
    CHECK(concept_equal(one.dl, c_subst(q.dl, a)));
    Formula two = wp_action({a, b}, q);
    CHECK(concept_equal(two.dl, c_subst(c_subst(q.dl, b), a)));
}

TEST_CASE("wp of strategies matches the calculus row by row") {
    RuleSet rules = toy_rules();
    Formula q = Formula::of(parse_concept("B"));
    const Rule& del = rules.at("del");
    Formula app_del = Formula::of(app_formula_alcu(del, true));
    Formula wp_del = wp_action(del.rhs, q);

    CHECK(formula_equal(wp_strategy(s_eps(), q, rules), q));
    CHECK(formula_equal(wp_strategy(s_rule("del"), q, rules),
                        formula_implies(app_del, wp_del)));
    CHECK(formula_equal(wp_strategy(s_mandatory("del"), q, rules),
                        formula_and(app_del, wp_del)));
    CHECK(formula_equal(wp_strategy(s_try("del"), q, rules),
                        formula_and(formula_implies(app_del, wp_del),
                                    formula_implies(formula_not(app_del), q))));
    StrategyPtr s0 = s_rule("del");
    StrategyPtr s1 = s_rule("tag");
    CHECK(formula_equal(wp_strategy(s_seq(s0, s1), q, rules),
                        wp_strategy(s0, wp_strategy(s1, q, rules), rules)));
    CHECK(formula_equal(wp_strategy(s_choice(s0, s1), q, rules),
                        formula_and(wp_strategy(s0, q, rules), wp_strategy(s1, q, rules))));

    ConceptPtr inv = parse_concept("forall U . (A or not A)");
    CHECK(concept_equal(wp_strategy(s_closure(s0, inv), q, rules).dl, inv));
    CHECK_THROWS_AS(wp_strategy(s_closure(s0), q, rules), MissingInvariant);
}

TEST_CASE("vc of strategies matches the calculus row by row") {
    RuleSet rules = toy_rules();
    Formula q = Formula::of(parse_concept("B"));
    CHECK(formula_is_top(vc_strategy(s_eps(), q, rules)));
    CHECK(formula_is_top(vc_strategy(s_rule("del"), q, rules)));
    CHECK(formula_is_top(vc_strategy(s_mandatory("del"), q, rules)));
    CHECK(formula_is_top(vc_strategy(s_try("del"), q, rules)));

    StrategyPtr s0 = s_rule("del");
    StrategyPtr s1 = s_rule("tag");
    CHECK(formula_equal(vc_strategy(s_seq(s0, s1), q, rules),
                        formula_and(vc_strategy(s0, wp_strategy(s1, q, rules), rules),
                                    vc_strategy(s1, q, rules))));
    // vc of a plain choice of rules folds to top.
    CHECK(formula_is_top(vc_strategy(s_choice(s0, s1), q, rules)));

    ConceptPtr invc = parse_concept("A or not A");
    StrategyPtr closure = s_closure(s0, invc);
    Formula inv = formula_globalize(Formula::of(invc));
    Formula app0 = app_formula(s0, rules, LogicKind::Dl);
    Formula expected = formula_and(
        vc_strategy(s0, inv, rules),
        formula_and(formula_implies(formula_and(inv, app0), wp_strategy(s0, inv, rules)),
                    formula_implies(formula_and(inv, formula_not(app0)), q)));
    CHECK(formula_equal(vc_strategy(closure, q, rules), expected));
}

TEST_CASE("wp/vc identities hold on random strategies") {
    Rng rng(83);
    RuleSet rules = toy_rules();
    std::vector<std::string> names{"del", "tag"};
    Formula q = Formula::of(parse_concept("B or A"));
    for (int i = 0; i < 300; ++i) {
        StrategyPtr s0 = random_strategy(rng, names, 2, LogicKind::Dl);
        StrategyPtr s1 = random_strategy(rng, names, 2, LogicKind::Dl);
        CHECK(formula_equal(wp_strategy(s_seq(s0, s1), q, rules),
                            wp_strategy(s0, wp_strategy(s1, q, rules), rules)));
        CHECK(formula_equal(wp_strategy(s_choice(s0, s1), q, rules),
                            formula_and(wp_strategy(s0, q, rules),
                                        wp_strategy(s1, q, rules))));
        CHECK(formula_equal(vc_strategy(s_seq(s0, s1), q, rules),
                            formula_and(vc_strategy(s0, wp_strategy(s1, q, rules), rules),
                                        vc_strategy(s1, q, rules))));
        CHECK(formula_equal(vc_strategy(s_choice(s0, s1), q, rules),
                            formula_and(vc_strategy(s0, q, rules),
                                        vc_strategy(s1, q, rules))));
    }
}

TEST_CASE("correctness formula of the empty strategy is pre implies post") {
    Specification sp;
    sp.logic = LogicKind::Dl;
    sp.strategy = s_eps();
    sp.pre = Formula::of(parse_concept("A"));
    sp.post = Formula::of(parse_concept("B"));
    Formula correct = correctness_formula(sp);
    ConceptPtr glob_a = c_forall(Role::universal(), c_implies(c_active(), c_atomic("A")));
    ConceptPtr glob_b = c_forall(Role::universal(), c_implies(c_active(), c_atomic("B")));
    CHECK(concept_equal(correct.dl, c_implies(glob_a, glob_b)));

    // A contradictory precondition folds the whole formula to top.
    sp.pre = Formula::of(c_bot());
    CHECK(formula_is_top(correctness_formula(sp)));
}

TEST_CASE("servernet correctness formula has the walkthrough shape") {
    Specification sp = servernet_spec();
    Formula correct = correctness_formula(sp);
    REQUIRE(correct.kind == LogicKind::Dl);
    // Pre => (App(r0) => wp(alpha0, Post)) and (App(r1) => wp(alpha1, Post)),
    // with both vc conjuncts folded away.
    Formula wp = wp_strategy(sp.strategy, sp.post, sp.rules);
    Formula expect = formula_eliminate(formula_implies(sp.pre, wp));
    CHECK(concept_equal(correct.dl, expect.dl));
    CHECK(formula_is_top(vc_strategy(sp.strategy, sp.post, sp.rules)));

    Formula a0 = Formula::of(app_formula_alcu(sp.rules.at("r0"), true));
    Formula a1 = Formula::of(app_formula_alcu(sp.rules.at("r1"), true));
    Formula shape = formula_implies(
        sp.pre, formula_and(formula_implies(a0, wp_action(sp.rules.at("r0").rhs, sp.post)),
                            formula_implies(a1, wp_action(sp.rules.at("r1").rhs, sp.post))));
    CHECK(concept_equal(correct.dl, formula_eliminate(shape).dl));
}

TEST_CASE("check_on_graph evaluates in the right logic") {
    LdGraph g = make_graph(make_alphabet({"A"}, {}), {node("n0")}, {{node("n0"), {"A"}}}, {});
    CHECK(check_on_graph(g, Formula::of(c_top())));
    CHECK(check_on_graph(g, Formula::of(parse_concept("A"))));
    CHECK(!check_on_graph(g, Formula::of(parse_concept("not A"))));
    CHECK(check_on_graph(g, Formula::of(parse_fol("exists x . A(x)"))));
}

TEST_CASE("bounded validity finds the canonical counterexample") {
    Alphabet ab = make_alphabet({"A"}, {"r"});
    ValidityOptions opt;
    opt.max_nodes = 2;
    CHECK(!bounded_validity(Formula::of(c_top()), ab, opt));

    auto cex = bounded_validity(Formula::of(c_atomic("A")), ab, opt);
    REQUIRE(cex);
    CHECK(cex->graph.active.size() == 1);
    CHECK(!check_on_graph(cex->graph, Formula::of(c_atomic("A"))));

    // Tautology with structure: no counterexample either.
    CHECK(!bounded_validity(Formula::of(parse_concept("forall r . A or exists r . not A")),
                            ab, opt));
}

TEST_CASE("bounded validity agrees with flat enumeration on tiny bounds") {
    // Flat oracle: all graphs with <= 2 active nodes over one concept, one role.
    Alphabet ab = make_alphabet({"A"}, {"r"});
    std::vector<LdGraph> all;
    for (int n = 0; n <= 2; ++n) {
        std::vector<NodeId> nodes;
        for (int i = 0; i < n; ++i) nodes.push_back(NodeId{"v" + std::to_string(i)});
        int label_configs = 1 << n;
        int edge_slots = n * n;
        for (int lm = 0; lm < label_configs; ++lm)
            for (int em = 0; em < (1 << edge_slots); ++em) {
                LdGraph g;
                g.alphabet = ab;
                for (const auto& v : nodes) {
                    g.universe.insert(v);
                    g.active.insert(v);
                }
                for (int i = 0; i < n; ++i)
                    if (lm & (1 << i)) g.labels[nodes[i]] = {"A"};
                int slot = 0, k = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j, ++slot)
                        if (em & (1 << slot))
                            g.edges[EdgeId{"e" + std::to_string(k++)}] =
                                Edge{nodes[i], nodes[j], "r"};
                all.push_back(std::move(g));
            }
    }
    Rng rng(89);
    GenParams p;
    p.concepts = {"A"};
    p.roles = {"r"};
    ValidityOptions opt;
    opt.max_nodes = 2;
    for (int i = 0; i < 120; ++i) {
        ConceptPtr c = random_concept(rng, p, {}, 2);
        bool all_hold = true;
        for (const LdGraph& g : all) all_hold &= graph_satisfies(g, c);
        auto cex = bounded_validity(Formula::of(c), ab, opt);
        CHECK(all_hold == !cex.has_value());
        if (cex) CHECK(!graph_satisfies(cex->graph, c));
    }
}

TEST_CASE("lemma: wp entails the post-state property") {
    Rng rng(97);
    GenParams p;
    p.min_active = 1;  // graph-level satisfaction is vacuous on node-less graphs
    for (int i = 0; i < 600; ++i) {
        LdGraph g = random_graph(rng, p);
        std::vector<NodeId> universe(g.universe.begin(), g.universe.end());
        ActionSeq alpha;
        LdGraph cur = g;
        int len = 1 + static_cast<int>(rng.below(4));
        for (int k = 0; k < len; ++k) {
            auto a = random_action(rng, cur, kAllKinds[rng.below(std::size(kAllKinds))]);
            if (!a) break;
            alpha.push_back(*a);
            cur = apply_elementary(cur, *a);
        }
        if (alpha.empty()) continue;
        Formula q = formula_globalize(Formula::of(random_concept(rng, p, universe, 2)));
        Formula wp = formula_eliminate(wp_action(alpha, q));
        if (!check_on_graph(g, wp)) continue;
        CHECK(check_on_graph(apply_sequence(g, alpha), q));
    }
}

TEST_CASE("soundness testing reports no violations for honest specifications") {
    Rng rng(101);
    Specification sp;
    sp.logic = LogicKind::Dl;
    sp.strategy = s_eps();
    sp.pre = Formula::of(parse_concept("A or not A"));
    sp.post = sp.pre;
    GenParams p;
    auto sampler = [&p](Rng& r) { return random_graph(r, p); };
    SoundnessReport rep = test_soundness(sp, sampler, 50, 20, rng);
    CHECK(rep.sampled == 50);
    CHECK(rep.violations == 0);

    Specification snet = servernet_spec();
    GenParams sn_params;
    sn_params.max_active = 4;
    SoundnessReport sn = test_soundness(
        snet, [&](Rng& r) { return random_spec_graph(r, snet, sn_params); }, 60, 50, rng);
    CHECK(sn.sampled > 0);
    CHECK(sn.violations == 0);
}

TEST_CASE("alphabet and reserved names are read off the specification") {
    Specification sp = servernet_spec();
    Alphabet ab = spec_alphabet(sp);
    CHECK(ab.basic_concepts == std::set<std::string>{"Client", "Proxy"});
    CHECK(ab.basic_roles == std::set<std::string>{"C2P", "Request"});
    CHECK(spec_reserved_names(sp.rules) == std::vector<std::string>{"k"});
}

TEST_CASE("the servernet walkthrough states satisfy their conditions") {
    Specification sp = servernet_spec();
    LdGraph pre_state = make_graph(
        make_alphabet({"Client", "Proxy"}, {"Request", "C2P"}),
        {node("c"), node("p"), node("u")},
        {{node("c"), {"Client"}}, {node("p"), {"Proxy"}}, {node("u"), {"Client"}}},
        {{edge("e0"), {node("c"), node("p"), "Request"}},
         {edge("e1"), {node("u"), node("p"), "C2P"}}});
    CHECK(check_on_graph(pre_state, sp.pre));
    CHECK(check_on_graph(pre_state, Formula::of(c_top())));

    // Run the choice strategy; the post-state satisfies Post either way.
    DerivationSet ds = derivations(pre_state, sp.strategy, sp.rules, 10);
    bool some_graph = false;
    for (const Outcome& o : ds.outcomes)
        if (o.is_graph()) {
            some_graph = true;
            CHECK(check_on_graph(o.graph, sp.post));
        }
    CHECK(some_graph);
}
