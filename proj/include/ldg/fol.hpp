#pragma once

#include <memory>
#include <string>

#include "ldg/action.hpp"
#include "ldg/ids.hpp"

namespace ldg {

// A term is a variable or a constant naming a universe node.
struct Term {
    bool is_var = false;
    std::string var;
    NodeId node;

    static Term variable(std::string v) { return {true, std::move(v), {}}; }
    static Term constant(NodeId n) { return {false, {}, std::move(n)}; }

    auto operator<=>(const Term&) const = default;
};

enum class FolKind {
    Top,
    ConceptApp,  // C(t)
    ActiveApp,   // Active(t)
    RoleApp,     // r(t1,t2)
    Eq,          // t1 = t2
    Not,
    Or,
    Exists,
    Subst,  // phi[a]
};

struct FolNode;
using FolPtr = std::shared_ptr<const FolNode>;

struct FolNode {
    FolKind kind;
    std::string name;  // ConceptApp / RoleApp predicate name
    Term t1, t2;
    std::string var;  // Exists
    FolPtr a;
    FolPtr b;       // Or
    Action action;  // Subst
};

FolPtr f_top();
FolPtr f_bot();
FolPtr f_concept(std::string name, Term t);
FolPtr f_active(Term t);
FolPtr f_role(std::string name, Term t1, Term t2);
FolPtr f_eq(Term t1, Term t2);
FolPtr f_neq(Term t1, Term t2);
FolPtr f_not(FolPtr a);
FolPtr f_or(FolPtr a, FolPtr b);
FolPtr f_and(FolPtr a, FolPtr b);
FolPtr f_implies(FolPtr a, FolPtr b);
FolPtr f_exists(std::string var, FolPtr a);
FolPtr f_forall(std::string var, FolPtr a);
FolPtr f_subst(FolPtr a, Action act);

bool is_bot(const FolPtr& f);
bool is_top(const FolPtr& f);

bool fol_equal(const FolPtr& a, const FolPtr& b);
bool has_pending_subst(const FolPtr& f);

// Guards every quantifier with Active.
FolPtr relativize_active(const FolPtr& f);

}  // namespace ldg
