#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldg/graph.hpp"
#include "ldg/rng.hpp"
#include "ldg/strategy.hpp"
#include "ldg/verify.hpp"

namespace ldg {

// Knobs for the random generators used by the property suites and `fuzz`.
struct GenParams {
    int max_active = 5;
    int min_active = 0;
    int reserved = 2;
    int max_edges = 8;
    int max_depth = 4;
    int max_bound = 3;
    std::vector<std::string> concepts = {"A", "B"};
    std::vector<std::string> roles = {"r", "s"};
};

LdGraph random_graph(Rng& rng, const GenParams& p);

// A host for a specification: nodes named after the rules' left-hand sides
// may be active, fresh names stay reserved, plus generic nodes. Formulas that
// pin rule node names always find them in the universe.
LdGraph random_spec_graph(Rng& rng, const Specification& sp, const GenParams& p);

// An action of the given kind with arguments drawn from g; nullopt when the
// graph cannot supply them (e.g. del_N on an empty graph).
std::optional<Action> random_action(Rng& rng, const LdGraph& g, ActionKind kind,
                                    const CloneParams* forced_clone = nullptr);

ConceptPtr random_concept(Rng& rng, const GenParams& p, const std::vector<NodeId>& universe,
                          int depth);
FolPtr random_fol(Rng& rng, const GenParams& p, const std::vector<NodeId>& universe, int depth);

StrategyPtr random_strategy(Rng& rng, const std::vector<std::string>& rule_names, int depth,
                            LogicKind logic);

struct FuzzReport {
    int cases = 0;
    int skipped = 0;
    int failures = 0;
    std::vector<std::string> samples;  // first few failing cases, rendered
};

// The fundamental substitution oracle, randomized: checks that evaluating the
// eliminated phi[a] on g agrees with evaluating phi on g[a].
FuzzReport fuzz_biconditional(uint64_t seed, int cases, ActionKind kind, bool use_fol,
                              const GenParams& p, const CloneParams* forced_clone = nullptr);

// All 32 in/out/loop combinations over a one-role alphabet.
std::vector<CloneParams> clone_param_sweep(const std::string& role);

}  // namespace ldg
