#include <doctest.h>

#include "ldg/bisim.hpp"
#include "ldg/eval.hpp"
#include "ldg/gen.hpp"

using namespace ldg;

namespace {

// ALCQU concepts only: what both bisimulation variants must preserve.
ConceptPtr random_alcqu(Rng& rng, int depth) {
    if (depth <= 0 || rng.chance(0.3)) {
        switch (rng.below(2)) {
            case 0: return c_top();
            default: return c_atomic("C");
        }
    }
    switch (rng.below(5)) {
        case 0: return c_not(random_alcqu(rng, depth - 1));
        case 1: return c_or(random_alcqu(rng, depth - 1), random_alcqu(rng, depth - 1));
        case 2: return c_exists(Role::basic("R"), random_alcqu(rng, depth - 1));
        case 3: return c_exists(Role::universal(), random_alcqu(rng, depth - 1));
        default:
            return c_less(1 + static_cast<int>(rng.below(3)), Role::basic("R"),
                          random_alcqu(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("the model/counter-model pair is an ALCQUOSelf bisimulation") {
    BisimInterp I, J;
    Relation z;
    non_closure_fixture(I, J, z);
    BisimReport rep = is_bisimulation(I, J, z, FeatureSet::alcquoself());
    std::string first = rep.violations.empty() ? std::string() : rep.violations[0];
    INFO(first);
    CHECK(rep.ok);
    // Dropping the Self condition keeps it a bisimulation too.
    CHECK(is_bisimulation(I, J, z, FeatureSet::alcquo()).ok);
}

TEST_CASE("identity relation is a bisimulation of an interpretation with itself") {
    BisimInterp I, J;
    Relation z;
    non_closure_fixture(I, J, z);
    Relation id;
    for (const NodeId& n : I.graph.active) id.insert({n, n});
    CHECK(is_bisimulation(I, I, id, FeatureSet::alcquoself()).ok);
}

TEST_CASE("label disagreement breaks the base condition") {
    BisimInterp I, J;
    Relation z;
    non_closure_fixture(I, J, z);
    Relation bad = z;
    bad.insert({node("d1"), node("f3")});  // unlabeled vs C
    BisimReport rep = is_bisimulation(I, J, bad, FeatureSet::alcquoself());
    CHECK(!rep.ok);
    bool saw_alc1 = false;
    for (const auto& v : rep.violations) saw_alc1 |= v.find("(ALC_1)") != std::string::npos;
    CHECK(saw_alc1);
}

TEST_CASE("the empty relation is rejected") {
    BisimInterp I, J;
    Relation z;
    non_closure_fixture(I, J, z);
    BisimReport rep = is_bisimulation(I, J, {}, FeatureSet::alcquoself());
    CHECK(!rep.ok);
}

TEST_CASE("removing an edge breaks the forth condition") {
    BisimInterp I, J;
    Relation z;
    non_closure_fixture(I, J, z);
    J.graph.edges.erase(edge("e2"));  // f2 loses its successor
    BisimReport rep = is_bisimulation(I, J, z, FeatureSet::alcquoself());
    CHECK(!rep.ok);
    bool saw_alc2 = false;
    for (const auto& v : rep.violations) saw_alc2 |= v.find("(ALC_2)") != std::string::npos;
    CHECK(saw_alc2);
}

TEST_CASE("largest bisimulation contains the drawn relation") {
    BisimInterp I, J;
    Relation z;
    non_closure_fixture(I, J, z);
    auto big = largest_bisimulation(I, J, FeatureSet::alcquoself());
    REQUIRE(big);
    for (const auto& pair : z) CHECK(big->count(pair) == 1);
    CHECK(is_bisimulation(I, J, *big, FeatureSet::alcquoself()).ok);

    // Local maximality: re-adding any stripped pair breaks the relation.
    for (const NodeId& d1 : I.graph.active)
        for (const NodeId& d2 : J.graph.active) {
            if (big->count({d1, d2})) continue;
            Relation extended = *big;
            extended.insert({d1, d2});
            CHECK(!is_bisimulation(I, J, extended, FeatureSet::alcquoself()).ok);
        }
}

TEST_CASE("largest bisimulation of isomorphic interpretations includes the isomorphism") {
    BisimInterp I, J;
    Relation z;
    non_closure_fixture(I, J, z);
    auto self = largest_bisimulation(I, I, FeatureSet::alcquoself());
    REQUIRE(self);
    for (const NodeId& n : I.graph.active) CHECK(self->count({n, n}) == 1);
}

TEST_CASE("unmatchable nodes make the largest bisimulation fail the totality check") {
    Alphabet ab = make_alphabet({"C"}, {"R"});
    BisimInterp I{make_graph(ab, {node("a")}, {{node("a"), {"C"}}}, {}), {}};
    BisimInterp J{make_graph(ab, {node("b")}, {}, {}), {}};
    CHECK(!largest_bisimulation(I, J, FeatureSet::alcquoself()));
}

TEST_CASE("bisimulation is symmetric under swapping and transposing") {
    BisimInterp I, J;
    Relation z;
    non_closure_fixture(I, J, z);
    Relation zt;
    for (const auto& [a, b] : z) zt.insert({b, a});
    BisimInterp Jt = J, It = I;
    CHECK(is_bisimulation(J, I, zt, FeatureSet::alcquoself()).ok ==
          is_bisimulation(I, J, z, FeatureSet::alcquoself()).ok);
}

TEST_CASE("bisimilar points agree on every sampled concept") {
    BisimInterp I, J;
    Relation z;
    non_closure_fixture(I, J, z);
    Rng rng(103);
    for (int i = 0; i < 400; ++i) {
        ConceptPtr c = random_alcqu(rng, 3);
        for (const auto& [d1, d2] : z)
            CHECK(holds_at(I.graph, d1, c) == holds_at(J.graph, d2, c));
    }
}

TEST_CASE("the non-closure demonstration passes all three steps") {
    NonClosureReport rep = demonstrate_non_closure();
    for (const auto& line : rep.log) INFO(line);
    CHECK(rep.bisimilar_before);
    CHECK(rep.holds_at_d1_after);
    CHECK(rep.fails_at_d1p_after);
    CHECK(rep.ok());
}
