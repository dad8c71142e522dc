#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include "ldg/action.hpp"
#include "ldg/alphabet.hpp"
#include "ldg/ids.hpp"

namespace ldg {

struct Edge {
    NodeId src;
    NodeId tgt;
    std::string role;

    auto operator<=>(const Edge&) const = default;
};

// A finite decorated graph. `active` is the node set N of the graph proper;
// `universe` additionally holds reserved nodes, which carry no labels and no
// incident edges and serve as the targets of add_N and clone before those
// actions make them active. The logic modules take `universe` as the domain.
struct LdGraph {
    Alphabet alphabet;
    std::set<NodeId> universe;
    std::set<NodeId> active;
    std::map<NodeId, std::set<std::string>> labels;  // defined on active nodes
    std::map<EdgeId, Edge> edges;

    bool is_active(const NodeId& n) const { return active.count(n) > 0; }
    bool in_universe(const NodeId& n) const { return universe.count(n) > 0; }
    bool is_reserved(const NodeId& n) const { return in_universe(n) && !is_active(n); }

    const std::set<std::string>& labels_of(const NodeId& n) const;

    bool operator==(const LdGraph&) const = default;
};

// Constructs an active-only graph; labels/edges validated against the alphabet.
LdGraph make_graph(Alphabet alphabet,
                   const std::set<NodeId>& active,
                   const std::map<NodeId, std::set<std::string>>& labels,
                   const std::map<EdgeId, Edge>& edges,
                   const std::set<NodeId>& reserved = {});

// Checks every structural invariant; throws on violation.
void check_invariants(const LdGraph& g);

// Pure application of one elementary action, per the semantics table.
LdGraph apply_elementary(const LdGraph& g, const Action& a);

// Left fold of apply_elementary; errors are annotated with the failing index.
LdGraph apply_sequence(const LdGraph& g, const ActionSeq& alpha);

// Adds one reserved node named n<k> for the smallest unused k.
std::pair<LdGraph, NodeId> reserve_fresh(const LdGraph& g);

// Smallest unused edge id of the form e<k>.
EdgeId fresh_edge_id(const LdGraph& g);

}  // namespace ldg
