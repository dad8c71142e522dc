#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ldg/bits.hpp"
#include "ldg/concepts.hpp"
#include "ldg/fol.hpp"
#include "ldg/graph.hpp"
#include "ldg/rule.hpp"

namespace ldg {

enum class Tri : int8_t { False = 0, Unknown = 1, True = 2 };

// A graph under construction: the node set and activity are fixed, labels and
// edge presence (multiplicity at most one per pair and role) are three-valued.
struct PartialGraph {
    Alphabet alphabet;
    std::vector<NodeId> nodes;  // sorted universe
    std::map<NodeId, size_t> index_of;
    Bits active;
    std::map<std::string, std::vector<Tri>> label;  // per concept, per node
    std::map<std::string, std::vector<Tri>> edge;   // per role, n*n row-major

    size_t size() const { return nodes.size(); }
    Tri& label_at(const std::string& c, size_t node) { return label.at(c)[node]; }
    Tri& edge_at(const std::string& r, size_t src, size_t tgt) {
        return edge.at(r)[src * size() + tgt];
    }
    Tri edge_at(const std::string& r, size_t src, size_t tgt) const {
        return edge.at(r)[src * size() + tgt];
    }
};

// All labels of active nodes and all edges between active pairs unknown;
// everything involving reserved nodes pinned false.
PartialGraph open_partial_graph(const Alphabet& alphabet, const std::vector<NodeId>& universe,
                                const std::vector<NodeId>& active);

// Completes the partial graph, resolving unknowns to the given polarity.
LdGraph materialize(const PartialGraph& pg, bool unknowns_true = false);

// Sound interval bounds: lo <= truth <= hi in every completion.
struct TriSet {
    Bits lo;
    Bits hi;
};

TriSet eval3_concept(const PartialGraph& pg, const ConceptPtr& c);
Tri eval3_fol(const PartialGraph& pg, const FolPtr& f);

// Bounds on match existence for a rule over every completion.
Tri match3(const PartialGraph& pg, const Rule& rule);

}  // namespace ldg
