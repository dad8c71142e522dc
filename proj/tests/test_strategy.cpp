#include <doctest.h>

#include <algorithm>

#include "ldg/gen.hpp"
#include "ldg/parse.hpp"
#include "ldg/strategy.hpp"

using namespace ldg;

namespace {

// del: deletes one A-labeled node; tag: labels any node with B; must: needs a B.
RuleSet toy_rules() {
    return parse_rules(R"rr(
rule del { lhs { nodes: x [A] } rhs { del_N(x) } }
rule tag { lhs { nodes: x } rhs { add_C(x,B) } }
rule must { lhs { nodes: x [B] } rhs { del_C(x,B) } }
)rr");
}

LdGraph three_as() {
    return make_graph(make_alphabet({"A", "B"}, {"r"}),
                      {node("n0"), node("n1"), node("n2")},
                      {{node("n0"), {"A"}}, {node("n1"), {"A"}}, {node("n2"), {"A"}}}, {});
}

bool contains(const DerivationSet& ds, const Outcome& o) {
    return std::any_of(ds.outcomes.begin(), ds.outcomes.end(),
                       [&](const Outcome& x) { return outcome_equal(x, o); });
}

}  // namespace

TEST_CASE("App follows the applicability table") {
    RuleSet rules = toy_rules();
    LdGraph g = three_as();
    LdGraph empty = make_graph(make_alphabet({"A", "B"}, {"r"}), {}, {}, {});

    CHECK(app(g, s_eps(), rules));
    CHECK(app(empty, s_eps(), rules));
    CHECK(app(g, s_rule("del"), rules));
    CHECK(!app(empty, s_rule("del"), rules));
    CHECK(!app(empty, s_mandatory("del"), rules));
    CHECK(app(empty, s_try("del"), rules));
    CHECK(app(empty, s_closure(s_rule("del")), rules));
    CHECK(app(g, s_choice(s_rule("must"), s_rule("del")), rules));   // right side applies
    CHECK(!app(empty, s_choice(s_rule("must"), s_rule("del")), rules));
    CHECK(app(g, s_seq(s_rule("del"), s_rule("must")), rules));      // head only
    CHECK(!app(empty, s_seq(s_rule("del"), s_eps()), rules));
    CHECK_THROWS_AS(app(g, s_rule("nope"), rules), UnknownRule);
}

TEST_CASE("execute follows the strategy application rules") {
    RuleSet rules = toy_rules();
    LdGraph g = three_as();
    LdGraph empty = make_graph(make_alphabet({"A", "B"}, {"r"}), {}, {}, {});

    CHECK(execute(g, s_eps(), rules).graph == g);
    CHECK(execute(empty, s_rule("del"), rules).kind == Outcome::Kind::AnyGraph);
    CHECK(execute(empty, s_mandatory("del"), rules).kind == Outcome::Kind::Failure);
    CHECK(execute(empty, s_try("del"), rules).graph == empty);

    // del* empties the A nodes in three iterations.
    Outcome o = execute(g, s_closure(s_rule("del")), rules);
    REQUIRE(o.is_graph());
    CHECK(o.graph.active.empty());
}

TEST_CASE("closure of an always-applicable strategy hits the step bound") {
    RuleSet rules = toy_rules();
    LdGraph g = three_as();
    CHECK_THROWS_AS(execute(g, s_closure(s_eps()), rules, MatchPolicy::FirstMatch, 100),
                    StepBoundExceeded);
    CHECK_THROWS_AS(execute(g, s_closure(s_rule("tag")), rules, MatchPolicy::FirstMatch, 100),
                    StepBoundExceeded);
}

TEST_CASE("derivations enumerate matches and branches") {
    RuleSet rules = toy_rules();
    LdGraph g = three_as();

    DerivationSet just_eps = derivations(g, s_eps(), rules);
    REQUIRE(just_eps.outcomes.size() == 1);
    CHECK(just_eps.outcomes[0].graph == g);

    // Three A-nodes: del has three matches and three distinct results.
    DerivationSet del = derivations(g, s_rule("del"), rules);
    CHECK(del.outcomes.size() == 3);

    // Choice explores both branches.
    LdGraph empty = make_graph(make_alphabet({"A", "B"}, {"r"}), {}, {}, {});
    DerivationSet both = derivations(empty, s_choice(s_rule("del"), s_mandatory("del")), rules);
    CHECK(contains(both, Outcome::any_graph()));
    CHECK(contains(both, Outcome::failure()));
}

TEST_CASE("any-graph and failure absorb the remaining strategy") {
    RuleSet rules = toy_rules();
    LdGraph empty = make_graph(make_alphabet({"A", "B"}, {"r"}), {}, {}, {});
    // del does not apply, so the sequence never reaches the second step.
    Outcome o1 = execute(empty, s_seq(s_rule("del"), s_mandatory("del")), rules);
    CHECK(o1.kind == Outcome::Kind::AnyGraph);
    Outcome o2 = execute(empty, s_seq(s_mandatory("del"), s_eps()), rules);
    CHECK(o2.kind == Outcome::Kind::Failure);
    DerivationSet ds = derivations(empty, s_seq(s_rule("del"), s_mandatory("del")), rules);
    REQUIRE(ds.outcomes.size() == 1);
    CHECK(ds.outcomes[0].kind == Outcome::Kind::AnyGraph);
}

TEST_CASE("closure-false law: inapplicable closures return the input") {
    Rng rng(71);
    GenParams p;
    RuleSet rules = toy_rules();
    for (int i = 0; i < 200; ++i) {
        LdGraph g = random_graph(rng, p);
        StrategyPtr body = random_strategy(rng, {"del", "tag", "must"}, 2, LogicKind::Dl);
        if (app(g, body, rules)) continue;
        Outcome o = execute(g, s_closure(body), rules);
        REQUIRE(o.is_graph());
        CHECK(o.graph == g);
    }
}

TEST_CASE("rule, trial and mandatory agree whenever the rule matches") {
    Rng rng(73);
    GenParams p;
    RuleSet rules = toy_rules();
    const char* names[] = {"del", "tag", "must"};
    for (int i = 0; i < 300; ++i) {
        LdGraph g = random_graph(rng, p);
        std::string name = names[rng.below(3)];
        if (!applicable(g, rules.at(name))) continue;
        DerivationSet plain = derivations(g, s_rule(name), rules);
        DerivationSet trial = derivations(g, s_try(name), rules);
        DerivationSet must = derivations(g, s_mandatory(name), rules);
        REQUIRE(plain.outcomes.size() == trial.outcomes.size());
        REQUIRE(plain.outcomes.size() == must.outcomes.size());
        for (size_t k = 0; k < plain.outcomes.size(); ++k) {
            CHECK(outcome_equal(plain.outcomes[k], trial.outcomes[k]));
            CHECK(outcome_equal(plain.outcomes[k], must.outcomes[k]));
        }
    }
}

TEST_CASE("every executed outcome is among the enumerated derivations") {
    Rng rng(79);
    GenParams p;
    p.max_active = 2;
    p.max_edges = 3;
    RuleSet rules = toy_rules();
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        LdGraph g = random_graph(rng, p);
        StrategyPtr s = random_strategy(rng, {"del", "tag", "must"}, 2, LogicKind::Dl);
        DerivationSet ds = derivations(g, s, rules, 8);
        if (ds.bound_hit) continue;
        for (MatchPolicy policy : {MatchPolicy::FirstMatch, MatchPolicy::Seeded}) {
            Rng prng(rng.next());
            Outcome o;
            try {
                o = execute(g, s, rules, policy, 1000, &prng);
            } catch (const StepBoundExceeded&) {
                continue;
            }
            CHECK(contains(ds, o));
            ++checked;
        }
    }
    CHECK(checked > 1000);
}
