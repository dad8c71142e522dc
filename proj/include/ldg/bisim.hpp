#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ldg/graph.hpp"

namespace ldg {

// Feature flags on top of the base ALC conditions, which are always checked.
struct FeatureSet {
    bool nominals = true;   // (O) and (ALC_4)
    bool counting = true;   // (Q)
    bool self_loops = true; // (Self)
    bool universal = true;  // (U_1), (U_2)

    static FeatureSet alcquo() { return {true, true, false, true}; }
    static FeatureSet alcquoself() { return {true, true, true, true}; }
};

// An interpretation for bisimulation checking: the active nodes of a graph
// plus an explicit assignment of nominal names to nodes.
struct BisimInterp {
    LdGraph graph;
    std::map<std::string, NodeId> nominals;
};

using Relation = std::set<std::pair<NodeId, NodeId>>;

struct BisimReport {
    bool ok = false;
    std::vector<std::string> violations;
};

BisimReport is_bisimulation(const BisimInterp& I, const BisimInterp& J, const Relation& z,
                            const FeatureSet& f);

// Greatest fixpoint: starts from all pairs agreeing on the pair-local
// conditions, strips pairs breaking the Z-dependent ones, then validates the
// global conditions. Empty or invalid results yield nullopt.
std::optional<Relation> largest_bisimulation(const BisimInterp& I, const BisimInterp& J,
                                             const FeatureSet& f);

struct NonClosureReport {
    bool bisimilar_before = false;
    bool holds_at_d1_after = false;
    bool fails_at_d1p_after = false;
    std::vector<std::string> log;

    bool ok() const { return bisimilar_before && holds_at_d1_after && fails_at_d1p_after; }
};

// Built-in witness that merging breaks closure for counting logics without
// inverse roles: a bisimilar model/counter-model pair where (>= 2 R C) holds
// at d1 but not at d'1 after mrg(i,j) on both sides.
NonClosureReport demonstrate_non_closure();

// The fixture itself, for tests that want to perturb it.
void non_closure_fixture(BisimInterp& I, BisimInterp& J, Relation& z);

}  // namespace ldg
