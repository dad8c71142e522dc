#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldg/concepts.hpp"
#include "ldg/fol.hpp"
#include "ldg/graph.hpp"

namespace ldg {

// Left-hand sides are decorated graphs whose node labels are arbitrary
// concepts, so they get their own structure instead of reusing LdGraph.
struct LhsNode {
    std::string name;
    std::vector<ConceptPtr> labels;
};

struct LhsEdge {
    std::string id;
    std::string src;
    std::string tgt;
    std::string role;
};

struct Lhs {
    std::vector<LhsNode> nodes;
    std::vector<LhsEdge> edges;

    const LhsNode* find(const std::string& name) const;
    bool has_node(const std::string& name) const { return find(name) != nullptr; }
};

struct Rule {
    std::string name;
    Lhs lhs;
    ActionSeq rhs;  // node args are LHS names or fresh names

    // Names introduced by add_N / cl targets, in order of first introduction.
    std::vector<std::string> fresh_names() const;
    void validate() const;
};

struct RuleSet {
    std::vector<Rule> rules;

    const Rule* find(const std::string& name) const;
    const Rule& at(const std::string& name) const;
};

// h = (h^N, h^E), keyed by LHS names/edge ids.
struct Match {
    std::map<std::string, NodeId> nodes;
    std::map<std::string, EdgeId> edges;

    auto operator<=>(const Match&) const = default;
};

// All homomorphisms (not necessarily injective unless asked), sorted
// lexicographically by mapped host ids.
std::vector<Match> find_matches(const LdGraph& g, const Rule& rule, bool injective = false);

bool applicable(const LdGraph& g, const Rule& rule);

// Checks conditions 1-4 of the match definition; used both by the matcher
// and as a post-hoc self-check in tests.
bool is_valid_match(const LdGraph& g, const Rule& rule, const Match& m);

LdGraph apply_rule(const LdGraph& g, const Rule& rule, const Match& m);

// Applicability as a first-order sentence. With pin_nodes the rule's node
// names are used as constants naming specific host nodes, as the weakest
// precondition calculus requires; otherwise they become quantified variables
// and the sentence holds exactly when some match exists.
FolPtr app_formula_fol(const Rule& rule, bool pin_nodes = false);

// Applicability as a concept, for rules whose left-hand side is a rooted tree.
ConceptPtr app_formula_alcu(const Rule& rule, bool pin_nodes = false);

}  // namespace ldg
