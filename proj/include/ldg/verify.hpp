#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldg/rng.hpp"
#include "ldg/rule.hpp"
#include "ldg/strategy.hpp"

namespace ldg {

enum class LogicKind { Dl, Fol };

// A condition in whichever logic the specification uses.
struct Formula {
    LogicKind kind = LogicKind::Dl;
    ConceptPtr dl;
    FolPtr fol;

    static Formula of(ConceptPtr c) { return {LogicKind::Dl, std::move(c), nullptr}; }
    static Formula of(FolPtr f) { return {LogicKind::Fol, nullptr, std::move(f)}; }
};

Formula formula_top(LogicKind kind);
Formula formula_not(const Formula& a);
Formula formula_and(const Formula& a, const Formula& b);
Formula formula_or(const Formula& a, const Formula& b);
Formula formula_implies(const Formula& a, const Formula& b);
bool formula_equal(const Formula& a, const Formula& b);
bool formula_is_top(const Formula& f);
Formula formula_eliminate(const Formula& f);

// Graph-level satisfaction survives substitution only for formulas whose
// extension is all-or-nothing. First-order sentences already are; concepts
// get wrapped as forall U . (Active => c) unless they are such already.
Formula formula_globalize(const Formula& f);

struct Specification {
    Formula pre;
    RuleSet rules;
    StrategyPtr strategy;
    Formula post;
    LogicKind logic = LogicKind::Dl;
    int bound_nodes = 3;  // default enumeration bound from the spec file
};

// Weakest precondition of an action: q wrapped in pending substitutions,
// right to left. Not eliminated; elimination is a separate pass.
Formula wp_action(const ActionSeq& alpha, const Formula& q);

// Applicability of a strategy as a formula (rule applicabilities pinned to
// the rule's node names, as the calculus reads them).
Formula app_formula(const StrategyPtr& s, const RuleSet& rules, LogicKind kind);

Formula wp_strategy(const StrategyPtr& s, const Formula& q, const RuleSet& rules);
Formula vc_strategy(const StrategyPtr& s, const Formula& q, const RuleSet& rules);

// (Pre => wp(s,Post)) and vc(s,Post), substitution-eliminated and folded;
// first-order pre/post are relativized to Active.
Formula correctness_formula(const Specification& sp);

// Concept and role names mentioned anywhere in the specification.
Alphabet spec_alphabet(const Specification& sp);

// Fresh node names introduced by the rule set's right-hand sides; these stay
// reserved during bounded enumeration.
std::vector<std::string> spec_reserved_names(const RuleSet& rules);

bool check_on_graph(const LdGraph& g, const Formula& f);

struct Counterexample {
    LdGraph graph;
};

struct ValidityOptions {
    int max_nodes = 3;
    int max_parallel = 1;          // >1 never affects truth: roles are pair sets
    uint64_t budget = 200'000'000; // DFS node visits
    std::vector<std::string> reserved_names;  // names kept reserved (rule fresh nodes)
};

// Searches every graph with up to max_nodes active nodes over the alphabet,
// plus one node for each nominal/constant of the formula, for a violation.
// Returns the first counterexample in canonical order, if any.
std::optional<Counterexample> bounded_validity(const Formula& f, const Alphabet& alphabet,
                                               const ValidityOptions& opt);

// Exhaustive check that the applicability formula of a rule agrees with the
// matcher on every host up to max_nodes active nodes (at least one node).
// one_directional restricts to applicable => formula. Returns a witness host
// on disagreement.
std::optional<LdGraph> find_app_mismatch(const Rule& rule, bool use_fol,
                                         const Alphabet& alphabet, int max_nodes,
                                         bool one_directional = false,
                                         uint64_t budget = 200'000'000);

using GraphSampler = std::function<LdGraph(Rng&)>;

struct SoundnessReport {
    int sampled = 0;     // graphs satisfying the correctness formula
    int attempts = 0;
    int violations = 0;
    bool bound_hit = false;
    std::vector<LdGraph> bad;
};

// Samples graphs satisfying the eliminated correctness formula and checks
// that every Graph outcome of the strategy satisfies Post. A violation
// falsifies the implementation, not the calculus.
SoundnessReport test_soundness(const Specification& sp, const GraphSampler& sampler,
                               int trials, size_t step_bound, Rng& rng);

}  // namespace ldg
