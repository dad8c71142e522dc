#pragma once

#include <set>
#include <string>
#include <vector>

#include "ldg/ids.hpp"

namespace ldg {

// Role sets steering which incident edges of the original are copied to the
// clone and with which orientation.
struct CloneParams {
    std::set<std::string> in;
    std::set<std::string> out;
    std::set<std::string> loop_in;
    std::set<std::string> loop_out;
    std::set<std::string> loop_loop;

    auto operator<=>(const CloneParams&) const = default;
};

enum class ActionKind {
    AddNode,     // add_N(i), i names a reserved universe node
    DelNode,     // del_N(i)
    AddLabel,    // add_C(i,c)
    DelLabel,    // del_C(i,c)
    AddEdge,     // add_E(i,j,r), fresh edge id allocated
    AddEdgeId,   // add_E(e,i,j,r)
    DelEdge,     // del_E(i,j,r), removes every edge with that triple
    DelEdgeId,   // del_E(e)
    Redirect,    // i >> j, retargets all incoming edges of i
    Merge,       // mrg(i,j)
    Clone,       // cl(i,j,R_in,R_out,R_l_in,R_l_out,R_l_l)
};

struct Action {
    ActionKind kind;
    NodeId i;
    NodeId j;
    std::string name;  // concept name for AddLabel/DelLabel, role for edges
    EdgeId edge;       // AddEdgeId/DelEdgeId
    CloneParams clone;

    auto operator<=>(const Action&) const = default;

    static Action add_node(NodeId i) { return {ActionKind::AddNode, std::move(i), {}, {}, {}, {}}; }
    static Action del_node(NodeId i) { return {ActionKind::DelNode, std::move(i), {}, {}, {}, {}}; }
    static Action add_label(NodeId i, std::string c) {
        return {ActionKind::AddLabel, std::move(i), {}, std::move(c), {}, {}};
    }
    static Action del_label(NodeId i, std::string c) {
        return {ActionKind::DelLabel, std::move(i), {}, std::move(c), {}, {}};
    }
    static Action add_edge(NodeId i, NodeId j, std::string r) {
        return {ActionKind::AddEdge, std::move(i), std::move(j), std::move(r), {}, {}};
    }
    static Action add_edge_id(EdgeId e, NodeId i, NodeId j, std::string r) {
        return {ActionKind::AddEdgeId, std::move(i), std::move(j), std::move(r), std::move(e), {}};
    }
    static Action del_edge(NodeId i, NodeId j, std::string r) {
        return {ActionKind::DelEdge, std::move(i), std::move(j), std::move(r), {}, {}};
    }
    static Action del_edge_id(EdgeId e) {
        return {ActionKind::DelEdgeId, {}, {}, {}, std::move(e), {}};
    }
    static Action redirect(NodeId i, NodeId j) {
        return {ActionKind::Redirect, std::move(i), std::move(j), {}, {}, {}};
    }
    static Action merge(NodeId i, NodeId j) {
        return {ActionKind::Merge, std::move(i), std::move(j), {}, {}, {}};
    }
    static Action clone_node(NodeId i, NodeId j, CloneParams p) {
        return {ActionKind::Clone, std::move(i), std::move(j), {}, {}, std::move(p)};
    }
};

using ActionSeq = std::vector<Action>;

}  // namespace ldg
