#include "ldg/concepts.hpp"

#include "ldg/errors.hpp"

namespace ldg {

Role Role::inverted() const {
    switch (kind) {
        case RoleKind::Basic: return Role{RoleKind::Inverse, name};
        case RoleKind::Inverse: return Role{RoleKind::Basic, name};
        case RoleKind::Universal: return *this;
    }
    return *this;
}

namespace {
ConceptPtr mk(ConceptNode n) { return std::make_shared<const ConceptNode>(std::move(n)); }
}  // namespace

ConceptPtr c_top() {
    static const ConceptPtr t = mk({ConceptKind::Top, {}, {}, {}, 0, nullptr, nullptr, {}});
    return t;
}

ConceptPtr c_bot() {
    static const ConceptPtr b =
        mk({ConceptKind::Not, {}, {}, {}, 0, c_top(), nullptr, {}});
    return b;
}

bool is_top(const ConceptPtr& c) { return c->kind == ConceptKind::Top; }
bool is_bot(const ConceptPtr& c) {
    return c->kind == ConceptKind::Not && is_top(c->a);
}

ConceptPtr c_atomic(std::string name) {
    return mk({ConceptKind::Atomic, std::move(name), {}, {}, 0, nullptr, nullptr, {}});
}

ConceptPtr c_active() {
    static const ConceptPtr a = mk({ConceptKind::Active, {}, {}, {}, 0, nullptr, nullptr, {}});
    return a;
}

ConceptPtr c_nominal(NodeId n) {
    return mk({ConceptKind::Nominal, {}, std::move(n), {}, 0, nullptr, nullptr, {}});
}

ConceptPtr c_not(ConceptPtr c) {
    if (c->kind == ConceptKind::Not) return c->a;
    return mk({ConceptKind::Not, {}, {}, {}, 0, std::move(c), nullptr, {}});
}

ConceptPtr c_or(ConceptPtr a, ConceptPtr b) {
    if (is_bot(a)) return b;
    if (is_bot(b)) return a;
    if (is_top(a) || is_top(b)) return c_top();
    return mk({ConceptKind::Or, {}, {}, {}, 0, std::move(a), std::move(b), {}});
}

ConceptPtr c_and(ConceptPtr a, ConceptPtr b) {
    return c_not(c_or(c_not(std::move(a)), c_not(std::move(b))));
}

ConceptPtr c_implies(ConceptPtr a, ConceptPtr b) {
    return c_or(c_not(std::move(a)), std::move(b));
}

ConceptPtr c_exists(Role r, ConceptPtr c) {
    if (is_bot(c)) return c_bot();
    return mk({ConceptKind::Exists, {}, {}, std::move(r), 0, std::move(c), nullptr, {}});
}

ConceptPtr c_forall(Role r, ConceptPtr c) {
    return c_not(c_exists(std::move(r), c_not(std::move(c))));
}

ConceptPtr c_exists_self(Role r) {
    return mk({ConceptKind::ExistsSelf, {}, {}, std::move(r), 0, nullptr, nullptr, {}});
}

ConceptPtr c_less(int bound, Role r, ConceptPtr c) {
    if (bound <= 0) return c_bot();           // no set has fewer than zero members
    if (is_bot(c)) return c_top();            // zero witnesses < positive bound
    return mk({ConceptKind::Less, {}, {}, std::move(r), static_cast<unsigned>(bound),
               std::move(c), nullptr, {}});
}

ConceptPtr c_at_least(int bound, Role r, ConceptPtr c) {
    return c_not(c_less(bound, std::move(r), std::move(c)));
}

ConceptPtr c_subst(ConceptPtr c, Action a) {
    return mk({ConceptKind::Subst, {}, {}, {}, 0, std::move(c), nullptr, std::move(a)});
}

bool concept_equal(const ConceptPtr& a, const ConceptPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ConceptKind::Top:
        case ConceptKind::Active: return true;
        case ConceptKind::Atomic: return a->name == b->name;
        case ConceptKind::Nominal: return a->nominal == b->nominal;
        case ConceptKind::Not: return concept_equal(a->a, b->a);
        case ConceptKind::Or: return concept_equal(a->a, b->a) && concept_equal(a->b, b->b);
        case ConceptKind::Exists: return a->role == b->role && concept_equal(a->a, b->a);
        case ConceptKind::ExistsSelf: return a->role == b->role;
        case ConceptKind::Less:
            return a->bound == b->bound && a->role == b->role && concept_equal(a->a, b->a);
        case ConceptKind::Subst: return a->action == b->action && concept_equal(a->a, b->a);
    }
    return false;
}

bool has_pending_subst(const ConceptPtr& c) {
    if (!c) return false;
    if (c->kind == ConceptKind::Subst) return true;
    return has_pending_subst(c->a) || has_pending_subst(c->b);
}

bool entails_active(const ConceptPtr& c) {
    switch (c->kind) {
        case ConceptKind::Atomic:
        case ConceptKind::Active:
            return true;
        case ConceptKind::Exists:
        case ConceptKind::ExistsSelf:
            // An incident edge forces activity; the universal role does not.
            return !c->role.is_universal();
        case ConceptKind::Or:
            return entails_active(c->a) && entails_active(c->b);
        case ConceptKind::Not:
            // Recognizes the and-pattern not(not a or not b).
            if (c->a->kind == ConceptKind::Or)
                return entails_active(c_not(c->a->a)) || entails_active(c_not(c->a->b));
            if (c->a->kind == ConceptKind::Not) return entails_active(c->a->a);
            return false;
        default:
            return false;
    }
}

}  // namespace ldg
