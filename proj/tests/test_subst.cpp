#include <doctest.h>

#include "ldg/eval.hpp"
#include "ldg/gen.hpp"
#include "ldg/parse.hpp"
#include "ldg/print.hpp"
#include "ldg/subst.hpp"

using namespace ldg;

namespace {

const ActionKind kAllKinds[] = {ActionKind::AddNode,  ActionKind::DelNode,
                                ActionKind::AddLabel, ActionKind::DelLabel,
                                ActionKind::AddEdge,  ActionKind::DelEdge,
                                ActionKind::Redirect, ActionKind::Merge,
                                ActionKind::Clone};

ConceptPtr elim(const std::string& text) { return eliminate_dl(parse_concept(text)); }

}  // namespace

TEST_CASE("atomic concept rules") {
    CHECK(concept_equal(elim("A [add_C(i,A)]"), parse_concept("A or {i}")));
    CHECK(concept_equal(elim("A [add_C(i,B)]"), parse_concept("A")));
    CHECK(concept_equal(elim("A [del_C(i,A)]"), parse_concept("A and not {i}")));
    CHECK(concept_equal(elim("A [del_N(i)]"), parse_concept("A and not {i}")));
    CHECK(concept_equal(elim("A [add_N(i)]"), parse_concept("A")));
    CHECK(concept_equal(elim("A [i >> j]"), parse_concept("A")));
    CHECK(concept_equal(elim("A [mrg(i,j)]"),
                        parse_concept("not {j} and (A or ({i} and exists U . ({j} and A)))")));
    CHECK(concept_equal(elim("A [cl(i,j,{},{},{},{},{})]"),
                        parse_concept("A or ({j} and exists U . ({i} and A))")));
}

TEST_CASE("top and nominals are untouched by any substitution") {
    CHECK(concept_equal(elim("top [mrg(i,j)]"), c_top()));
    CHECK(concept_equal(elim("{k} [cl(i,j,{},{},{},{},{})]"), parse_concept("{k}")));
    CHECK(concept_equal(elim("{k} [del_N(k)]"), parse_concept("{k}")));
}

TEST_CASE("Active rules") {
    CHECK(concept_equal(elim("Active [add_N(i)]"), parse_concept("Active or {i}")));
    CHECK(concept_equal(elim("Active [del_N(i)]"), parse_concept("Active and not {i}")));
    CHECK(concept_equal(elim("Active [mrg(i,j)]"), parse_concept("Active and not {j}")));
    CHECK(concept_equal(elim("Active [cl(i,j,{},{},{},{},{})]"),
                        parse_concept("Active or {j}")));
    CHECK(concept_equal(elim("Active [add_C(i,A)]"), c_active()));
}

TEST_CASE("self-loop clone rule depends on the loop-loop parameter") {
    // The clone has an R-loop exactly when the original has one and the role
    // is kept by the fifth parameter set.
    CHECK(concept_equal(
        elim("(exists R . Self) [cl(i,j,{},{},{},{},{R})]"),
        parse_concept("exists R . Self or ({j} and exists U . ({i} and exists R . Self))")));
    CHECK(concept_equal(elim("(exists R . Self) [cl(i,j,{R},{R},{R},{R},{})]"),
                        parse_concept("exists R . Self")));
}

TEST_CASE("merge and identity-merge on structural concepts") {
    CHECK(concept_equal(elim("(exists R . A) [mrg(i,i)]"), parse_concept("exists R . A")));
    CHECK(concept_equal(elim("(< 2 R A) [i >> i]"), parse_concept("(< 2 R A)")));
}

TEST_CASE("connectives commute with substitutions") {
    CHECK(concept_equal(elim("(not A) [del_N(i)]"), c_not(elim("A [del_N(i)]"))));
    CHECK(concept_equal(elim("(A or B) [del_N(i)]"),
                        c_or(elim("A [del_N(i)]"), elim("B [del_N(i)]"))));
}

TEST_CASE("nested substitutions eliminate innermost first") {
    ConceptPtr c = parse_concept("(A [add_C(i,A)]) [del_N(j)]");
    ConceptPtr expect = push_action_dl(elim("A [add_C(i,A)]"), Action::del_node(node("j")));
    CHECK(concept_equal(eliminate_dl(c), expect));
    CHECK(!has_pending_subst(eliminate_dl(c)));
}

TEST_CASE("sequence suffix abbreviates nested substitution") {
    // phi[a1; a2] means (phi[a2])[a1]
    ConceptPtr seq = parse_concept("A [del_C(i,A); add_C(i,A)]");
    ConceptPtr nested = parse_concept("(A [add_C(i,A)]) [del_C(i,A)]");
    CHECK(concept_equal(eliminate_dl(seq), eliminate_dl(nested)));
}

TEST_CASE("malformed substitutions are rejected") {
    CHECK_THROWS_AS(elim("A [cl(i,i,{},{},{},{},{})]"), MalformedSubstitution);
    CHECK_THROWS_AS(elim("A [del_E(e0)]"), MalformedSubstitution);
}

TEST_CASE("fol substitution rules") {
    CHECK(fol_equal(eliminate_fol(parse_fol("Active(x0) [add_N(i)]")),
                    parse_fol("Active(x0) or i = x0")));
    CHECK(fol_equal(eliminate_fol(parse_fol("(not C(x0)) [del_C(i,C)]")),
                    f_not(eliminate_fol(parse_fol("C(x0) [del_C(i,C)]")))));
    CHECK(fol_equal(
        eliminate_fol(parse_fol("R(x0,y0) [mrg(i,j)]")),
        parse_fol("x0 != j and y0 != j and (R(x0,y0) or (R(x0,j) and y0 = i) or "
                  "(R(j,y0) and x0 = i) or (x0 = i and y0 = i and R(j,j)))")));
    CHECK(fol_equal(eliminate_fol(parse_fol("R(x0,y0) [i >> j]")),
                    parse_fol("(R(x0,y0) and not i = y0) or (R(x0,i) and j = y0)")));
    CHECK(fol_equal(eliminate_fol(parse_fol("(exists x . C(x)) [del_C(i,C)]")),
                    parse_fol("exists x . (C(x) and not i = x)")));
}

TEST_CASE("fol quantifier commutes over the fixed universe") {
    Rng rng(53);
    GenParams p;
    for (int i = 0; i < 200; ++i) {
        LdGraph g = random_graph(rng, p);
        std::vector<NodeId> universe(g.universe.begin(), g.universe.end());
        FolPtr body = random_fol(rng, p, universe, 2);
        auto a = random_action(rng, g, kAllKinds[rng.below(std::size(kAllKinds))]);
        if (!a) continue;
        FolPtr lhs = eliminate_fol(f_subst(f_exists("q", body), *a));
        FolPtr rhs = f_exists("q", eliminate_fol(f_subst(body, *a)));
        CHECK(fol_equal(lhs, rhs));
    }
}

TEST_CASE("biconditional spot checks from the walkthroughs") {
    LdGraph single = make_graph(make_alphabet({"A"}, {}), {node("n0")},
                                {{node("n0"), {"A"}}}, {});
    CHECK(check_biconditional(single, c_atomic("A"), Action::del_label(node("n0"), "A")));
    CHECK(check_biconditional(single, c_top(), Action::del_node(node("n0"))));

    LdGraph fig = make_graph(make_alphabet({}, {"r"}),
                             {node("i"), node("j"), node("k"), node("l")}, {},
                             {{edge("e0"), {node("i"), node("l"), "r"}},
                              {edge("e1"), {node("k"), node("i"), "r"}},
                              {edge("e2"), {node("i"), node("j"), "r"}},
                              {edge("e3"), {node("j"), node("k"), "r"}}});
    ConceptPtr reach_loop = parse_concept("exists r . exists r . Self");
    CHECK(check_biconditional(fig, reach_loop, Action::merge(node("i"), node("j"))));
    // After the merge i carries a loop, so i itself satisfies exists r . Self.
    ConceptPtr elim_self = eliminate_dl(c_subst(c_exists_self(Role::basic("r")),
                                           Action::merge(node("i"), node("j"))));
    CHECK(eval_concept(fig, elim_self).count(node("i")) == 1);
}

TEST_CASE("elimination is total, terminating and stays substitution-free") {
    Rng rng(59);
    GenParams p;
    for (int i = 0; i < 400; ++i) {
        LdGraph g = random_graph(rng, p);
        std::vector<NodeId> universe(g.universe.begin(), g.universe.end());
        ConceptPtr c = random_concept(rng, p, universe, 3);
        auto a = random_action(rng, g, kAllKinds[rng.below(std::size(kAllKinds))]);
        if (!a) continue;
        ConceptPtr out = eliminate_dl(c_subst(c, *a));
        CHECK(!has_pending_subst(out));
        FolPtr f = random_fol(rng, p, universe, 3);
        FolPtr fout = eliminate_fol(f_subst(f, *a));
        CHECK(!has_pending_subst(fout));
    }
}

TEST_CASE("eliminating a substitution-free formula is the identity") {
    Rng rng(61);
    GenParams p;
    for (int i = 0; i < 200; ++i) {
        LdGraph g = random_graph(rng, p);
        std::vector<NodeId> universe(g.universe.begin(), g.universe.end());
        ConceptPtr c = random_concept(rng, p, universe, 4);
        CHECK(eliminate_dl(c) == c);
        FolPtr f = random_fol(rng, p, universe, 4);
        CHECK(eliminate_fol(f) == f);
    }
}

TEST_CASE("trace replay reproduces every step") {
    Rng rng(67);
    GenParams p;
    for (int i = 0; i < 100; ++i) {
        LdGraph g = random_graph(rng, p);
        std::vector<NodeId> universe(g.universe.begin(), g.universe.end());
        ConceptPtr c = random_concept(rng, p, universe, 3);
        auto a = random_action(rng, g, kAllKinds[rng.below(std::size(kAllKinds))]);
        if (!a) continue;
        auto [out, trace] = eliminate_dl_traced(c_subst(c, *a));
        CHECK(!trace.empty());
        for (const auto& step : trace) {
            REQUIRE(step.before->kind == ConceptKind::Subst);
            CHECK(concept_equal(push_action_dl(step.before->a, step.before->action),
                                step.after));
        }
    }
}

// The master property: evaluating eliminate(phi[a]) before the action equals
// evaluating phi after it. Small counts here; the acceptance suite runs the
// full batches.
TEST_CASE("fundamental biconditional per action kind, DL") {
    GenParams p;
    for (ActionKind kind : kAllKinds) {
        FuzzReport rep = fuzz_biconditional(100 + static_cast<int>(kind), 400, kind, false, p);
        INFO("kind ", static_cast<int>(kind), " first failure:\n",
             rep.samples.empty() ? "" : rep.samples[0]);
        CHECK(rep.failures == 0);
        CHECK(rep.cases > 200);
    }
}

TEST_CASE("fundamental biconditional per action kind, FOL") {
    GenParams p;
    for (ActionKind kind : kAllKinds) {
        FuzzReport rep = fuzz_biconditional(200 + static_cast<int>(kind), 400, kind, true, p);
        INFO("kind ", static_cast<int>(kind), " first failure:\n",
             rep.samples.empty() ? "" : rep.samples[0]);
        CHECK(rep.failures == 0);
        CHECK(rep.cases > 200);
    }
}

TEST_CASE("clone sweep covers every parameter combination") {
    GenParams p;
    p.roles = {"r"};
    int combo = 0;
    for (const CloneParams& cp : clone_param_sweep("r")) {
        FuzzReport rep =
            fuzz_biconditional(300 + combo, 60, ActionKind::Clone, combo % 2 == 0, p, &cp);
        INFO("combo ", combo, " first failure:\n",
             rep.samples.empty() ? "" : rep.samples[0]);
        CHECK(rep.failures == 0);
        ++combo;
    }
    CHECK(combo == 32);
}
