#pragma once

#include <memory>
#include <string>

#include "ldg/action.hpp"
#include "ldg/ids.hpp"

namespace ldg {

enum class RoleKind { Basic, Inverse, Universal };

// R := r | inv r | U. Inverse only wraps a basic role.
struct Role {
    RoleKind kind = RoleKind::Basic;
    std::string name;  // empty for Universal

    static Role basic(std::string r) { return {RoleKind::Basic, std::move(r)}; }
    static Role inverse(std::string r) { return {RoleKind::Inverse, std::move(r)}; }
    static Role universal() { return {RoleKind::Universal, {}}; }

    bool is_universal() const { return kind == RoleKind::Universal; }
    Role inverted() const;

    auto operator<=>(const Role&) const = default;
};

enum class ConceptKind {
    Top,
    Atomic,
    Active,      // the special concept holding exactly at the graph's nodes
    Nominal,
    Not,
    Or,
    Exists,      // exists R . C
    ExistsSelf,  // exists R . Self
    Less,        // (< n R C)
    Subst,       // C[a], a pending substitution
};

struct ConceptNode;
using ConceptPtr = std::shared_ptr<const ConceptNode>;

// Immutable; shared subterms are reused so eliminated formulas stay DAG-sized.
struct ConceptNode {
    ConceptKind kind;
    std::string name;   // Atomic
    NodeId nominal;     // Nominal
    Role role;          // Exists / ExistsSelf / Less
    unsigned bound = 0; // Less
    ConceptPtr a;       // Not / Or / Exists / Less / Subst
    ConceptPtr b;       // Or
    Action action;      // Subst
};

// Builders. c_not, c_or, c_and and c_less fold the constant cases
// (double negation, bot-or, (< 0 R C) and friends).
ConceptPtr c_top();
ConceptPtr c_bot();
ConceptPtr c_atomic(std::string name);
ConceptPtr c_active();
ConceptPtr c_nominal(NodeId n);
ConceptPtr c_not(ConceptPtr c);
ConceptPtr c_or(ConceptPtr a, ConceptPtr b);
ConceptPtr c_and(ConceptPtr a, ConceptPtr b);
ConceptPtr c_implies(ConceptPtr a, ConceptPtr b);
ConceptPtr c_exists(Role r, ConceptPtr c);
ConceptPtr c_forall(Role r, ConceptPtr c);
ConceptPtr c_exists_self(Role r);
ConceptPtr c_less(int bound, Role r, ConceptPtr c);     // < bound
ConceptPtr c_at_least(int bound, Role r, ConceptPtr c); // >= bound
ConceptPtr c_subst(ConceptPtr c, Action a);

bool is_bot(const ConceptPtr& c);
bool is_top(const ConceptPtr& c);

bool concept_equal(const ConceptPtr& a, const ConceptPtr& b);
bool has_pending_subst(const ConceptPtr& c);

// True when the concept's satisfaction at a node forces that node active
// (syntactic check used when building applicability formulas).
bool entails_active(const ConceptPtr& c);

}  // namespace ldg
