#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ldg/bits.hpp"
#include "ldg/concepts.hpp"
#include "ldg/fol.hpp"
#include "ldg/graph.hpp"

namespace ldg {

// Induced interpretation of a graph in indexed form: the domain is the whole
// universe, concept extensions live on active nodes, roles are pair sets (so
// parallel equal-role edges collapse).
struct GraphIndex {
    const LdGraph* g = nullptr;
    std::vector<NodeId> nodes;  // sorted universe
    std::map<NodeId, size_t> index_of;
    Bits active;
    std::map<std::string, Bits> concepts;
    std::map<std::string, std::vector<Bits>> succ;  // role -> per-node successor mask
    std::map<std::string, std::vector<Bits>> pred;

    size_t size() const { return nodes.size(); }
    size_t index(const NodeId& n) const;
};

GraphIndex index_graph(const LdGraph& g);

// Extension of a substitution-free concept, as a node-index mask.
Bits eval_concept(const GraphIndex& ix, const ConceptPtr& c);

// Same, as a set of node ids.
std::set<NodeId> eval_concept(const LdGraph& g, const ConceptPtr& c);

bool holds_at(const LdGraph& g, const NodeId& n, const ConceptPtr& c);

// G |= c iff every node of the graph (the active set) is in the extension.
bool graph_satisfies(const LdGraph& g, const ConceptPtr& c);
bool graph_satisfies(const GraphIndex& ix, const ConceptPtr& c);

using FolEnv = std::vector<std::pair<std::string, NodeId>>;

// Tarskian evaluation; quantifiers range over the universe.
bool eval_fol(const LdGraph& g, const FolPtr& f, const FolEnv& env = {});
bool eval_fol(const GraphIndex& ix, const FolPtr& f, const FolEnv& env = {});

}  // namespace ldg
