#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldg/concepts.hpp"
#include "ldg/fol.hpp"
#include "ldg/rng.hpp"
#include "ldg/rule.hpp"

namespace ldg {

enum class StrategyKind { Empty, Rule, Try, Mandatory, Seq, Choice, Closure };

struct StrategyNode;
using StrategyPtr = std::shared_ptr<const StrategyNode>;

struct StrategyNode {
    StrategyKind kind;
    std::string rule;  // Rule / Try / Mandatory
    StrategyPtr a;     // Seq / Choice / Closure
    StrategyPtr b;     // Seq / Choice
    ConceptPtr inv_dl;  // Closure annotation, at most one of the two set
    FolPtr inv_fol;
};

StrategyPtr s_eps();
StrategyPtr s_rule(std::string name);
StrategyPtr s_try(std::string name);
StrategyPtr s_mandatory(std::string name);
StrategyPtr s_seq(StrategyPtr a, StrategyPtr b);
StrategyPtr s_choice(StrategyPtr a, StrategyPtr b);
StrategyPtr s_closure(StrategyPtr a, ConceptPtr inv_dl = nullptr, FolPtr inv_fol = nullptr);

bool strategy_equal(const StrategyPtr& a, const StrategyPtr& b);

// Resolves every rule name; throws UnknownRule otherwise.
void validate_strategy(const StrategyPtr& s, const RuleSet& rules);

struct Outcome {
    enum class Kind { Graph, AnyGraph, Failure };
    Kind kind = Kind::Graph;
    LdGraph graph;  // meaningful for Kind::Graph only

    static Outcome any_graph() { return {Kind::AnyGraph, {}}; }
    static Outcome failure() { return {Kind::Failure, {}}; }
    static Outcome of(LdGraph g) { return {Kind::Graph, std::move(g)}; }

    bool is_graph() const { return kind == Kind::Graph; }
};

bool outcome_less(const Outcome& a, const Outcome& b);
bool outcome_equal(const Outcome& a, const Outcome& b);

// Whether the strategy can perform at least one step on g.
bool app(const LdGraph& g, const StrategyPtr& s, const RuleSet& rules);

enum class MatchPolicy { FirstMatch, Seeded };

// One derivation following the strategy application rules. The policy picks
// among matches and choice branches; the step bound guards closures.
Outcome execute(const LdGraph& g, const StrategyPtr& s, const RuleSet& rules,
                MatchPolicy policy = MatchPolicy::FirstMatch, size_t step_bound = 10000,
                Rng* rng = nullptr, bool injective = false);

struct DerivationSet {
    std::vector<Outcome> outcomes;  // sorted, unique
    bool bound_hit = false;         // some branch ran out of steps
};

// Every outcome reachable within the bound, across all match choices and
// both choice branches.
DerivationSet derivations(const LdGraph& g, const StrategyPtr& s, const RuleSet& rules,
                          size_t step_bound = 50);

}  // namespace ldg
