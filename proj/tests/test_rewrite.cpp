#include <doctest.h>

#include "ldg/eval.hpp"
#include "ldg/gen.hpp"
#include "ldg/parse.hpp"
#include "ldg/print.hpp"
#include "ldg/rule.hpp"
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

// One client requesting a proxy that currently has `preds` C2P connections.
LdGraph servernet_host(int preds) {
    std::map<EdgeId, Edge> edges{{edge("q0"), {node("c"), node("p"), "Request"}}};
    std::set<NodeId> active{node("c"), node("p")};
    for (int k = 0; k < preds; ++k) {
        NodeId u{"u" + std::to_string(k)};
        active.insert(u);
        edges[EdgeId{"q" + std::to_string(k + 1)}] = {u, node("p"), "C2P"};
    }
    return make_graph(make_alphabet({"Client", "Proxy"}, {"Request", "C2P"}), active,
                      {{node("c"), {"Client"}}, {node("p"), {"Proxy"}}}, edges);
}

Rule nappfo_rule() {
    RuleSet rs = parse_rules(R"rr(
rule nappfo {
  lhs { nodes: i, j [C], k ["C or D"]; edges: i -R-> j, j -R-> k }
  rhs { add_C(i,A) }
}
)rr");
    return rs.rules[0];
}

}  // namespace

TEST_CASE("matching binds the client-proxy pair exactly once") {
    LdGraph g = servernet_host(1);
    RuleSet rules = servernet_rules();
    auto ms = find_matches(g, rules.at("r0"));
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].nodes.at("i") == node("c"));
    CHECK(ms[0].nodes.at("j") == node("p"));
    CHECK(ms[0].edges.at("e0") == edge("q0"));

    // Overloaded proxy: the counting label fails, r1 takes over.
    LdGraph busy = servernet_host(2);
    CHECK(find_matches(busy, rules.at("r0")).empty());
    CHECK(applicable(busy, rules.at("r1")));
    CHECK(!applicable(g, rules.at("r1")));
}

TEST_CASE("an unlabeled single-node pattern matches every active node") {
    RuleSet rs = parse_rules("rule any { lhs { nodes: x } rhs { } }");
    LdGraph g = make_graph(make_alphabet({"A"}, {}),
                           {node("n0"), node("n1"), node("n2")}, {}, {}, {node("n3")});
    auto ms = find_matches(g, rs.at("any"));
    CHECK(ms.size() == 3);  // reserved n3 is not a node of the graph
    for (const auto& m : ms) CHECK(is_valid_match(g, rs.at("any"), m));
}

TEST_CASE("matches come out in lexicographic host order and are homomorphisms") {
    RuleSet rs = parse_rules("rule e { lhs { nodes: x, y; edges: x -r-> y } rhs { } }");
    LdGraph g = make_graph(make_alphabet({}, {"r"}), {node("a"), node("b")}, {},
                           {{edge("e0"), {node("a"), node("b"), "r"}},
                            {edge("e1"), {node("b"), node("a"), "r"}},
                            {edge("e2"), {node("a"), node("a"), "r"}}});
    auto ms = find_matches(g, rs.at("e"));
    REQUIRE(ms.size() == 3);
    for (size_t i = 1; i < ms.size(); ++i) CHECK(ms[i - 1] < ms[i]);
    for (const auto& m : ms) CHECK(is_valid_match(g, rs.at("e"), m));

    auto inj = find_matches(g, rs.at("e"), /*injective=*/true);
    CHECK(inj.size() == 2);  // the loop needs x = y
}

TEST_CASE("parallel equal edges give distinct edge images") {
    RuleSet rs = parse_rules("rule e { lhs { nodes: x, y; edges: x -r-> y } rhs { } }");
    LdGraph g = make_graph(make_alphabet({}, {"r"}), {node("a"), node("b")}, {},
                           {{edge("e0"), {node("a"), node("b"), "r"}},
                            {edge("e1"), {node("a"), node("b"), "r"}}});
    CHECK(find_matches(g, rs.at("e")).size() == 2);
}

TEST_CASE("rule application rewrites through the match") {
    RuleSet rules = servernet_rules();
    LdGraph g = servernet_host(1);
    auto ms = find_matches(g, rules.at("r0"));
    REQUIRE(ms.size() == 1);
    LdGraph out = apply_rule(g, rules.at("r0"), ms[0]);
    // The Request edge became a C2P edge between the same endpoints.
    int requests = 0, c2p_from_c = 0;
    for (const auto& [id, e] : out.edges) {
        requests += e.role == "Request";
        c2p_from_c += e.role == "C2P" && e.src == node("c") && e.tgt == node("p");
    }
    CHECK(requests == 0);
    CHECK(c2p_from_c == 1);
}

TEST_CASE("a rule with an empty right-hand side leaves the host unchanged") {
    RuleSet rs = parse_rules("rule any { lhs { nodes: x } rhs { } }");
    LdGraph g = servernet_host(1);
    auto ms = find_matches(g, rs.at("any"));
    REQUIRE(!ms.empty());
    CHECK(apply_rule(g, rs.at("any"), ms[0]) == g);
}

TEST_CASE("the clone rule reserves a fresh node for its target") {
    RuleSet rules = servernet_rules();
    LdGraph g = servernet_host(2);
    auto ms = find_matches(g, rules.at("r1"));
    REQUIRE(ms.size() == 1);
    LdGraph out = apply_rule(g, rules.at("r1"), ms[0]);
    CHECK(out.active.size() == g.active.size() + 1);
    // The new proxy carries the Proxy label and one C2P edge from the client.
    NodeId fresh;
    for (const NodeId& n : out.active)
        if (!g.is_active(n)) fresh = n;
    CHECK(out.labels_of(fresh) == std::set<std::string>{"Proxy"});
    int c2p_to_fresh = 0, requests = 0;
    for (const auto& [id, e] : out.edges) {
        c2p_to_fresh += e.role == "C2P" && e.src == node("c") && e.tgt == fresh;
        requests += e.role == "Request";
    }
    CHECK(c2p_to_fresh == 1);
    CHECK(requests == 0);
    // R_in excludes C2P, so the old proxy keeps its predecessors.
    GraphIndex ix = index_graph(out);
    CHECK(eval_concept(ix, parse_concept("(>= 2 inv C2P top)")).get(ix.index(node("p"))));
}

TEST_CASE("apply_rule equals instantiating the action sequence by hand") {
    RuleSet rules = servernet_rules();
    LdGraph g = servernet_host(2);
    auto ms = find_matches(g, rules.at("r1"));
    REQUIRE(ms.size() == 1);

    auto [host, fresh] = reserve_fresh(g);
    ActionSeq alpha = {
        Action::clone_node(ms[0].nodes.at("j"), fresh, CloneParams{{}, {"Request"}, {}, {}, {}}),
        Action::del_edge(ms[0].nodes.at("i"), ms[0].nodes.at("j"), "Request"),
        Action::add_edge(ms[0].nodes.at("i"), fresh, "C2P"),
    };
    CHECK(apply_rule(g, rules.at("r1"), ms[0]) == apply_sequence(host, alpha));
}

TEST_CASE("applicability corner cases") {
    RuleSet rules = servernet_rules();
    LdGraph empty = make_graph(make_alphabet({"Client", "Proxy"}, {"Request", "C2P"}), {}, {}, {});
    CHECK(!applicable(empty, rules.at("r0")));
    LdGraph no_client = make_graph(make_alphabet({"Client", "Proxy"}, {"Request", "C2P"}),
                                   {node("p")}, {{node("p"), {"Proxy"}}}, {});
    CHECK(!applicable(no_client, rules.at("r0")));
    // Exactly one of the two rules applies, depending on the proxy load.
    CHECK((applicable(servernet_host(0), rules.at("r0")) &&
           !applicable(servernet_host(0), rules.at("r1"))));
    CHECK((!applicable(servernet_host(3), rules.at("r0")) &&
           applicable(servernet_host(3), rules.at("r1"))));
}

TEST_CASE("first-order applicability formula") {
    FolPtr f = app_formula_fol(nappfo_rule());
    FolPtr expect = parse_fol(
        "exists i . exists j . exists k . (C(j) and (C(k) or D(k)) and R(i,j) and R(j,k))");
    CHECK(fol_equal(f, expect));

    RuleSet single = parse_rules("rule any { lhs { nodes: x } rhs { } }");
    CHECK(fol_equal(app_formula_fol(single.at("any")), parse_fol("exists x . Active(x)")));

    RuleSet pair = parse_rules("rule e { lhs { nodes: x, y; edges: x -r-> y } rhs { } }");
    CHECK(fol_equal(app_formula_fol(pair.at("e")),
                    parse_fol("exists x . exists y . r(x,y)")));

    // Counting labels have no first-order rendering here.
    CHECK_THROWS_AS(app_formula_fol(servernet_rules().at("r0")), InexpressibleLabel);
}

TEST_CASE("description-logic applicability formula for tree patterns") {
    CHECK(concept_equal(app_formula_alcu(nappfo_rule()),
                        parse_concept("exists U . exists R . (C and exists R . (C or D))")));
    CHECK(concept_equal(app_formula_alcu(servernet_rules().at("r0")),
                        parse_concept(
                            "exists U . (Client and exists Request . (Proxy and (< 2 inv C2P top)))")));
    RuleSet single = parse_rules("rule one { lhs { nodes: x [A] } rhs { } }");
    CHECK(concept_equal(app_formula_alcu(single.at("one")), parse_concept("exists U . A")));
    RuleSet bare = parse_rules("rule any { lhs { nodes: x } rhs { } }");
    CHECK(concept_equal(app_formula_alcu(bare.at("any")), parse_concept("exists U . Active")));
}

TEST_CASE("non-tree left-hand sides are rejected for the concept encoding") {
    RuleSet cyc = parse_rules("rule c { lhs { nodes: x, y; edges: x -r-> y, y -r-> x } rhs { } }");
    CHECK_THROWS_AS(app_formula_alcu(cyc.at("c")), NotATree);
    RuleSet diamond = parse_rules(
        "rule d { lhs { nodes: x, y, z; edges: x -r-> z, y -r-> z } rhs { } }");
    CHECK_THROWS_AS(app_formula_alcu(diamond.at("d")), NotATree);
    RuleSet loop = parse_rules("rule l { lhs { nodes: x; edges: x -r-> x } rhs { } }");
    CHECK_THROWS_AS(app_formula_alcu(loop.at("l")), NotATree);
}

TEST_CASE("pinned applicability names the matched nodes") {
    RuleSet rules = servernet_rules();
    ConceptPtr pinned = app_formula_alcu(rules.at("r0"), /*pin_nodes=*/true);
    CHECK(concept_equal(
        pinned,
        parse_concept("exists U . ({i} and Client and exists Request . ({j} and (Proxy and "
                      "(< 2 inv C2P top))))")));
    FolPtr fol_pinned = app_formula_fol(nappfo_rule(), /*pin_nodes=*/true);
    CHECK(fol_equal(fol_pinned,
                    parse_fol("C(j) and (C(k) or D(k)) and R(i,j) and R(j,k)")));
}

TEST_CASE("applicability formulas agree with the matcher on small hosts") {
    Alphabet ab = make_alphabet({"C", "D"}, {"R"});
    CHECK(!find_app_mismatch(nappfo_rule(), /*use_fol=*/true, ab, 3));
    CHECK(!find_app_mismatch(nappfo_rule(), /*use_fol=*/false, ab, 3));
    RuleSet pair = parse_rules("rule e { lhs { nodes: x, y; edges: x -r-> y } rhs { } }");
    Alphabet ab2 = make_alphabet({}, {"r"});
    CHECK(!find_app_mismatch(pair.at("e"), true, ab2, 4));
    CHECK(!find_app_mismatch(pair.at("e"), false, ab2, 4));
}

TEST_CASE("matching against an incompatible alphabet is reported as such") {
    RuleSet rules = servernet_rules();
    LdGraph g = make_graph(make_alphabet({"A"}, {"r"}), {node("n0")}, {}, {});
    CHECK_THROWS_AS(find_matches(g, rules.at("r0")), AlphabetMismatch);
}
